"""JSON encoding: rationals become ``"p/q"`` strings, floats stay numbers."""

import dataclasses
import json
from fractions import Fraction

from ninner.core import SquareMatrix, Vector


def to_jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (bool, int, float, str)) or obj is None:
        return obj
    if isinstance(obj, Vector):
        return [to_jsonable(c) for c in obj.coords]
    if isinstance(obj, SquareMatrix):
        return [[to_jsonable(v) for v in r] for r in obj.rows()]
    if hasattr(obj, "_asdict"):
        return {k: to_jsonable(v) for k, v in obj._asdict().items()}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj):
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)

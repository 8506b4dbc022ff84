"""Scalar field handling: exact rationals or IEEE doubles.

Exact mode uses :class:`fractions.Fraction`, which keeps every value in
lowest terms with a positive denominator. Float mode uses builtin ``float``.
"""

import math
import os
from fractions import Fraction
from numbers import Rational
from typing import Union

from ninner.errors import ParseError

Scalar = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_TOL = 1e-9


def default_mode():
    mode = os.environ.get("NINNER_DEFAULT_MODE", EXACT).strip().lower()
    if mode not in MODES:
        raise ValueError(f"NINNER_DEFAULT_MODE must be one of {MODES}, got {mode!r}")
    return mode


def check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return mode


def parse_scalar(text, mode=EXACT, line=None):
    """Parse a decimal literal or an integer ratio ``p/q``.

    Decimals are read as rationals over a power of ten, so ``"0.1"`` is
    exactly 1/10 in exact mode.
    """
    token = text.strip()
    if not token:
        raise ParseError("empty scalar", line)
    try:
        value = Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line) from None
    except ValueError:
        raise ParseError(f"not a decimal or p/q rational: {token!r}", line) from None
    if mode == EXACT:
        return value
    check_mode(mode)
    if "/" in token:
        return float(value)
    return float(token)


def coerce(value, mode):
    """Convert ``value`` into the scalar type of ``mode``.

    Exact mode refuses Python floats: they carry binary rounding that the
    caller almost never intended. Pass a string or a Fraction instead.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if mode == EXACT:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, (int, Rational)):
            return Fraction(value)
        if isinstance(value, str):
            return parse_scalar(value, EXACT)
        raise TypeError(
            f"exact mode needs int, Fraction or str, got {type(value).__name__}"
        )
    check_mode(mode)
    if isinstance(value, str):
        return parse_scalar(value, FLOAT)
    out = float(value)
    if not math.isfinite(out):
        raise ValueError(f"non-finite scalar {value!r}")
    return out


def zero(mode):
    return Fraction(0) if mode == EXACT else 0.0


def one(mode):
    return Fraction(1) if mode == EXACT else 1.0


def format_scalar(value):
    """Stable text form: ``p/q`` (or ``p``) for rationals, shortest repr for floats."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    raise TypeError(f"not a scalar: {value!r}")


def exact_sqrt(q):
    """Return the rational square root of ``q`` when it exists, else ``None``."""
    q = Fraction(q)
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def isclose(a, b, tol=DEFAULT_TOL, scale=None):
    """Exact equality for rationals, scaled absolute tolerance for floats."""
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a == b
    a, b = float(a), float(b)
    if scale is None:
        scale = max(abs(a), abs(b))
    return abs(a - b) <= tol * max(float(scale), 1e-300)

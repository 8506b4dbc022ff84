"""n-inner products, the iterated 2-inner product and their identities.

Exact mode (the default) computes over ``fractions.Fraction`` so every
polynomial identity can be checked to be literally zero.
"""

from ninner.applications import *  # noqa: F401,F403
from ninner.applications import __all__ as _apps_all
from ninner.core import *  # noqa: F401,F403
from ninner.core import __all__ as _core_all
from ninner.dodgson import *  # noqa: F401,F403
from ninner.dodgson import __all__ as _dodgson_all
from ninner.errors import (
    CollinearError,
    DimensionMismatchError,
    InternalConsistencyError,
    NegativeNormError,
    NInnerError,
    ParseError,
    PreconditionError,
    SingularSystemError,
)
from ninner.io import parse_dataset, parse_matrix, parse_vectors, read_dataset, read_matrix, read_vectors
from ninner.kernels import BACKEND
from ninner.products import *  # noqa: F401,F403
from ninner.products import __all__ as _products_all
from ninner.rng import SplitMix64, trial_rng
from ninner.scalar import DEFAULT_TOL, EXACT, FLOAT

__version__ = "0.1.0"

__all__ = [
    *_core_all, *_products_all, *_dodgson_all, *_apps_all,
    "CollinearError", "DimensionMismatchError", "InternalConsistencyError", "NegativeNormError",
    "NInnerError", "ParseError", "PreconditionError", "SingularSystemError",
    "parse_dataset", "parse_matrix", "parse_vectors", "read_dataset", "read_matrix", "read_vectors",
    "BACKEND", "SplitMix64", "trial_rng", "DEFAULT_TOL", "EXACT", "FLOAT",
]

"""Backend selection for the hot kernels.

The compiled extension is used when it was built; otherwise the pure-Python
module takes over. Set ``NINNER_PURE_PYTHON=1`` to force the fallback.
"""

import os

from ninner import _pykernels

if os.environ.get("NINNER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from ninner import _ckernels as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

det_float = _impl.det_float
det_int = _impl.det_int
eliminate_float = _impl.eliminate_float
eliminate_object = _impl.eliminate_object


def available_backends():
    """Map backend name to kernel module, for tests and benchmarks."""
    out = {"python": _pykernels}
    try:
        from ninner import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out

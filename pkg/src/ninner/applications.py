"""Applications of the iterated 2-inner product.

Gram-determinant relations, the Lupu-Schwarz inequality, two-predictor
least squares computed three independent ways, population statistics as
2-inner products, and Chebyshev functionals.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from ninner.core import (
    InnerSpace,
    _det_rows,
    Vector,
    cramer_solve,
    gram_determinant,
    inner_product,
    norm_squared,
)
from ninner.errors import (
    CollinearError,
    DimensionMismatchError,
    InternalConsistencyError,
    PreconditionError,
    SingularSystemError,
)
from ninner.products import _iterated, _root, _standard, iterated_2_inner, iterated_scale
from ninner.scalar import DEFAULT_TOL, EXACT, FLOAT, coerce, isclose

VECTOR_CRAMER = "vector_cramer"
STATISTICS_FORM = "statistics_form"
NORMAL_EQUATIONS = "normal_equations"
METHODS = (VECTOR_CRAMER, STATISTICS_FORM, NORMAL_EQUATIONS)

COLLINEARITY_GUARD = 1e-12


def _consistent(space_mode, lhs, rhs, what, tol=DEFAULT_TOL, scale=None):
    if space_mode == EXACT:
        ok = lhs == rhs
    else:
        ok = isclose(lhs, rhs, tol, scale)
    if not ok:
        raise InternalConsistencyError(f"{what}: {lhs} != {rhs}")


def _prod_norms(space, *vs):
    out = 1.0
    for v in vs:
        out *= abs(float(norm_squared(space, v)))
    return out


# --- Gram relations -------------------------------------------------------


def lupu_gap(space, x, w, z, tol=DEFAULT_TOL):
    """RHS minus LHS of the Lupu-Schwarz inequality; always >= 0.

    Also confirms that ``gap * ||z||^2 == (x, x | w, z)_*``.
    """
    xx, ww, zz = norm_squared(space, x), norm_squared(space, w), norm_squared(space, z)
    wz, zx, xw = inner_product(space, w, z), inner_product(space, z, x), inner_product(space, x, w)
    gap = xx * ww * zz + 2 * wz * zx * xw - xx * wz * wz - ww * zx * zx - zz * xw * xw
    _consistent(
        space.mode, gap * zz, _iterated(space, x, x, [w, z]), "Lupu gap * ||z||^2 vs (x,x|w,z)_*",
        tol, 8 * _prod_norms(space, x, w, z, z),
    )
    return gap


def two_level_residual(space, x, w, z):
    """(x,x|w,z)_* - (||x|z||^2 ||w|z||^2 - (x,w|z)_*^2)."""
    xz = _iterated(space, x, x, [z])
    wz = _iterated(space, w, w, [z])
    xwz = _iterated(space, x, w, [z])
    return _iterated(space, x, x, [w, z]) - (xz * wz - xwz * xwz)


def lupu_product_residual(space, x, w, z):
    """Lupu gap times ||z||^2 minus (x,x|w,z)_*."""
    return lupu_gap(space, x, w, z) * norm_squared(space, z) - _iterated(space, x, x, [w, z])


def gram3_residual(space, x, w, z):
    """(x,x|w,z)_* - Gamma(x,w,z) ||z||^2."""
    return _iterated(space, x, x, [w, z]) - gram_determinant(space, [x, w, z]) * norm_squared(space, z)


def nested4_residual(space, x, y, v, w, z):
    """(x,y|v,w,z)_* - <x,y|v,w,z> ||w|z||^2 ||z||^4; with y = x the Gram form."""
    zz = norm_squared(space, z)
    return _iterated(space, x, y, [v, w, z]) - _standard(space, x, y, [v, w, z]) * _standard(space, w, w, [z]) * zz * zz


def gram4_residual(space, x, v, w, z):
    """(x,x|v,w,z)_* - Gamma(x,v,w,z) ||w|z||^2 ||z||^4."""
    zz = norm_squared(space, z)
    gamma = gram_determinant(space, [x, v, w, z])
    return _iterated(space, x, x, [v, w, z]) - gamma * _standard(space, w, w, [z]) * zz * zz


def gram_swap_residual(space, x, w, z):
    """(x,x|z,w)_* ||z||^2 - (x,x|w,z)_* ||w||^2."""
    return (
        _iterated(space, x, x, [z, w]) * norm_squared(space, z)
        - _iterated(space, x, x, [w, z]) * norm_squared(space, w)
    )


def gram_wrt(space, vs, z):
    """Gram determinant of ``vs`` with respect to ``z``: det of 2-inner products <a, b | z>."""
    rows = [[_standard(space, a, b, [z]) for b in vs] for a in vs]
    return _det_rows(rows, space.mode)


def gram_wrt_residual(space, x, w, v, z, tol=DEFAULT_TOL):
    """Gamma(x,w,v | z) - Gamma(x,w,v,z) ||z||^4.

    The right-hand Gram determinant includes ``z``: ``<a,b|z>`` is ``||z||^2``
    times the inner product of the components orthogonal to ``z``, so the
    3x3 determinant equals ``<x,x|v,w,z> ||z||^4``. Dropping ``z`` from the
    Gram list is only valid when ``z`` is a unit vector orthogonal to x, w, v.

    Also confirms ``Gamma(x,w,v|z) * <w,w|z> == (x,x|v,w,z)_*``.
    """
    zz = norm_squared(space, z)
    lhs = gram_wrt(space, [x, w, v], z)
    ww_z = _standard(space, w, w, [z])
    _consistent(
        space.mode, lhs * ww_z, _iterated(space, x, x, [v, w, z]),
        "Gamma(x,w,v|z) <w,w|z> vs (x,x|v,w,z)_*", tol,
        64 * _prod_norms(space, x, w, v, z, z, z, w, z),
    )
    return lhs - gram_determinant(space, [x, w, v, z]) * zz * zz


# --- regression -----------------------------------------------------------


@dataclass(frozen=True)
class RegressionFit:
    a: object
    b: object
    c: object
    method: str
    residual_sum_squares: object

    @property
    def coefficients(self):
        return (self.a, self.b, self.c)


def fit_vector_method(space, x, y, e, w, tol=DEFAULT_TOL):
    """Coefficients of ``w ~ a x + b y + c e`` as quotients of iterated products.

    ``a = (w,x|y,e)_*/(x,x|y,e)_*``, ``b = (w,y|x,e)_*/(x,x|y,e)_*`` and
    ``c = ||e||^2 (w,e|x,y)_* / (||y||^2 (x,x|y,e)_*)``. The result solves the
    3x3 normal system; that is verified before returning.
    """
    for v in (x, y, e, w):
        space.check(v)
    den = _iterated(space, x, x, [y, e])
    yy = norm_squared(space, y)
    ee = norm_squared(space, e)
    if space.mode == EXACT:
        singular = den == 0
    else:
        singular = den <= tol * iterated_scale(space, x, x, [y, e])
    if singular or yy == 0:
        raise SingularSystemError("{e, x, y} are linearly dependent", witness=den)
    a = _iterated(space, w, x, [y, e]) / den
    b = _iterated(space, w, y, [x, e]) / den
    c = ee * _iterated(space, w, e, [x, y]) / (yy * den)

    basis = (x, y, e)
    rhs_scale = math.sqrt(_prod_norms(space, w))
    for v in basis:
        lhs = a * inner_product(space, x, v) + b * inner_product(space, y, v) + c * inner_product(space, e, v)
        _consistent(
            space.mode, lhs, inner_product(space, w, v), "normal equation", math.sqrt(tol),
            rhs_scale * math.sqrt(_prod_norms(space, v)) * (1 + abs(float(a)) + abs(float(b)) + abs(float(c))),
        )
    if ee == 1:
        c_simple = inner_product(space, w, e) - a * inner_product(space, x, e) - b * inner_product(space, y, e)
        _consistent(space.mode, c, c_simple, "unit-e intercept", math.sqrt(tol), 1 + abs(float(c)))
    r = w - x * a - y * b - e * c
    return RegressionFit(a, b, c, VECTOR_CRAMER, norm_squared(space, r))


def _infer_mode(values):
    return FLOAT if any(isinstance(v, float) for v in values) else EXACT


@dataclass(frozen=True)
class Dataset:
    """Two predictor columns ``x``, ``y`` and a response ``z``."""

    x: Tuple
    y: Tuple
    z: Tuple
    mode: str = EXACT

    def __post_init__(self):
        cols = [tuple(coerce(v, self.mode) for v in col) for col in (self.x, self.y, self.z)]
        n = len(cols[0])
        for col in cols[1:]:
            if len(col) != n:
                raise DimensionMismatchError(n, len(col), "data column")
        if n < 3:
            raise PreconditionError("need at least 3 samples")
        object.__setattr__(self, "x", cols[0])
        object.__setattr__(self, "y", cols[1])
        object.__setattr__(self, "z", cols[2])

    def __len__(self):
        return len(self.x)

    def rss(self, a, b, c):
        return sum(((zi - a * xi - b * yi - c) ** 2 for xi, yi, zi in zip(self.x, self.y, self.z)), 0 * a)


def _check_data(data, mode=None):
    data = list(data)
    if not data:
        raise PreconditionError("empty data")
    mode = mode or _infer_mode(data)
    return [coerce(v, mode) for v in data]


def _embed(data, mode):
    space = InnerSpace.euclidean(len(data), mode)
    return space, Vector(data, mode), Vector([1] * len(data), mode)


def mean(data):
    """Population mean, also computed as <x/||u||, e> with e = u/||u||."""
    data = _check_data(data)
    mode = _infer_mode(data)
    n = len(data)
    direct = sum(data, 0 * data[0]) / n
    space, x, u = _embed(data, mode)
    via = inner_product(space, x, u) / norm_squared(space, u)
    _consistent(mode, direct, via, "mean", DEFAULT_TOL, sum(abs(float(v)) for v in data) / n)
    return direct


def covariance(data, second):
    """Population covariance, also computed as (x/||u||, y/||u|| | e)_*."""
    data, second = list(data), list(second)
    mode = _infer_mode(data + second)
    data, second = _check_data(data, mode), _check_data(second, mode)
    if len(data) != len(second):
        raise DimensionMismatchError(len(data), len(second), "data column")
    n = len(data)
    mx = sum(data, 0 * data[0]) / n
    my = sum(second, 0 * second[0]) / n
    direct = sum((a * b for a, b in zip(data, second)), 0 * data[0]) / n - mx * my
    space = InnerSpace.euclidean(n, mode)
    x, y = Vector(data, mode), Vector(second, mode)
    u = Vector([1] * n, mode)
    if mode == EXACT:
        # (x/|u|, y/|u| | u/|u|)_* = (x, y | u)_* / |u|^4 keeps everything rational.
        uu = norm_squared(space, u)
        via = _iterated(space, x, y, [u]) / (uu * uu)
    else:
        root = math.sqrt(n)
        via = _iterated(space, x * (1 / root), y * (1 / root), [u * (1 / root)])
    scale = math.sqrt(sum(float(a) ** 2 for a in data) * sum(float(b) ** 2 for b in second)) / n
    _consistent(mode, direct, via, "covariance", DEFAULT_TOL, 4 * scale)
    return direct


def variance(data):
    """Population variance ||x/||u|| | e||^2."""
    data = _check_data(data)
    return covariance(data, data)


def stddev(data):
    data = _check_data(data)
    var = variance(data)
    return _root(var, _infer_mode(data), DEFAULT_TOL, 0.0)


def _collinearity_guard(ds, vx, vy, cxy):
    det = vx * vy - cxy * cxy
    if ds.mode == EXACT:
        bad = det == 0
    else:
        bad = det <= COLLINEARITY_GUARD * vx * vy
    if bad:
        raise CollinearError(
            "predictors are collinear: var(x)var(y) - cov(x,y)^2 vanishes", witness=det
        )
    return det


def fit_normal_equations(ds):
    """Least squares through the three normal equations, solved by Cramer's rule."""
    n = len(ds)
    zero = 0 * ds.x[0]
    sx, sy, sz = sum(ds.x, zero), sum(ds.y, zero), sum(ds.z, zero)
    sxx = sum((v * v for v in ds.x), zero)
    syy = sum((v * v for v in ds.y), zero)
    sxy = sum((a * b for a, b in zip(ds.x, ds.y)), zero)
    sxz = sum((a * b for a, b in zip(ds.x, ds.z)), zero)
    syz = sum((a * b for a, b in zip(ds.y, ds.z)), zero)
    if ds.mode == FLOAT:
        _collinearity_guard(ds, sxx / n - (sx / n) ** 2, syy / n - (sy / n) ** 2, sxy / n - sx * sy / n ** 2)
    rows = [[sxx, sxy, sx], [sxy, syy, sy], [sx, sy, coerce(n, ds.mode)]]
    try:
        a, b, c = cramer_solve(rows, [sxz, syz, sz], ds.mode)
    except SingularSystemError as exc:
        raise CollinearError("design matrix is rank deficient", witness=exc.witness) from None
    return RegressionFit(a, b, c, NORMAL_EQUATIONS, ds.rss(a, b, c))


def fit_dataset_vector_method(ds, tol=DEFAULT_TOL):
    """Vector-method fit on the dataset columns embedded in R^n.

    Exact mode conditions on ``u = (1, ..., 1)`` instead of ``u/||u||``: the
    slopes are unchanged and the coefficient on ``u`` is the intercept.
    Float mode uses ``e = u/||u||`` literally.
    """
    n = len(ds)
    space = InnerSpace.euclidean(n, ds.mode)
    x, y, z = Vector._raw(ds.x, ds.mode), Vector._raw(ds.y, ds.mode), Vector._raw(ds.z, ds.mode)
    u = Vector([1] * n, ds.mode)
    if ds.mode == EXACT:
        fit = fit_vector_method(space, x, y, u, z, tol)
        c = fit.c
    else:
        root = math.sqrt(n)
        fit = fit_vector_method(space, x, y, u * (1 / root), z, tol)
        c = fit.c / root
    return RegressionFit(fit.a, fit.b, c, VECTOR_CRAMER, ds.rss(fit.a, fit.b, c))


def fits_agree(f, g, mode, tol=DEFAULT_TOL):
    if mode == EXACT:
        return f.coefficients == g.coefficients
    return all(
        abs(float(p) - float(q)) <= tol * max(abs(float(p)), abs(float(q)), 1.0)
        for p, q in zip(f.coefficients, g.coefficients)
    )


def fit_statistics_form(ds, tol=DEFAULT_TOL, cross_check=True):
    """Slopes from variances and covariances, intercept from the means.

    With ``cross_check`` the result is compared against
    :func:`fit_normal_equations` and :func:`fit_dataset_vector_method`.
    """
    vx, vy = variance(ds.x), variance(ds.y)
    cxy = covariance(ds.x, ds.y)
    cxz, cyz = covariance(ds.x, ds.z), covariance(ds.y, ds.z)
    det = _collinearity_guard(ds, vx, vy, cxy)
    a = (vy * cxz - cxy * cyz) / det
    b = (vx * cyz - cxy * cxz) / det
    c = mean(ds.z) - a * mean(ds.x) - b * mean(ds.y)
    fit = RegressionFit(a, b, c, STATISTICS_FORM, ds.rss(a, b, c))
    if cross_check:
        for other in (fit_normal_equations(ds), fit_dataset_vector_method(ds, tol)):
            if not fits_agree(fit, other, ds.mode, tol):
                raise InternalConsistencyError(f"{STATISTICS_FORM} {fit.coefficients} != {other.method} {other.coefficients}")
    return fit


def fit_all(ds, tol=DEFAULT_TOL):
    """All three fits, keyed by method name."""
    return {
        VECTOR_CRAMER: fit_dataset_vector_method(ds, tol),
        STATISTICS_FORM: fit_statistics_form(ds, tol, cross_check=False),
        NORMAL_EQUATIONS: fit_normal_equations(ds),
    }


# --- Chebyshev functionals ------------------------------------------------


def chebyshev(space, x, y, z, tol=DEFAULT_TOL):
    """T_z(x, y) = ||z||^2 <x,y> - <x,z><y,z>, which equals (x, y | z)_*."""
    value = norm_squared(space, z) * inner_product(space, x, y) - inner_product(space, x, z) * inner_product(space, y, z)
    _consistent(space.mode, value, _iterated(space, x, y, [z]), "T_z(x,y) vs (x,y|z)_*", tol, 2 * math.sqrt(_prod_norms(space, x, y, z, z)))
    return value


def _n_chebyshev_value(space, x, y, conds):
    vectors = [x, y, *conds]

    @lru_cache(maxsize=None)
    def t(i, j, depth):
        # depth = number of innermost conditioners still in force
        if depth == 1:
            return chebyshev(space, vectors[i], vectors[j], conds[-1])
        k = 2 + len(conds) - depth  # index of the peeled conditioner
        return t(i, j, depth - 1) * t(k, k, depth - 1) - t(i, k, depth - 1) * t(k, j, depth - 1)

    return t(0, 1, len(conds))


def n_chebyshev(space, p, tol=DEFAULT_TOL):
    """n-Chebyshev functional via its own recursion on T; equals the iterated product."""
    if not p.conditioners:
        raise PreconditionError("n-Chebyshev functional needs at least one conditioner")
    for v in p.vectors():
        space.check(v)
    for v in p.conditioners:
        if v.is_zero():
            raise PreconditionError("n-Chebyshev conditioners must be nonzero")
    value = _n_chebyshev_value(space, p.x, p.y, list(p.conditioners))
    _consistent(space.mode, value, iterated_2_inner(space, p), "n-Chebyshev vs iterated product", tol,
                iterated_scale(space, p.x, p.y, p.conditioners))
    return value


def n_chebyshev_schwarz_gap(space, p, tol=DEFAULT_TOL):
    """T(x,x) T(y,y) - T(x,y)^2 for the n-Chebyshev functional."""
    txx = n_chebyshev(space, p.with_args(y=p.x), tol)
    tyy = n_chebyshev(space, p.with_args(x=p.y), tol)
    txy = n_chebyshev(space, p, tol)
    return txx * tyy - txy * txy


__all__ = [
    "Dataset",
    "RegressionFit",
    "METHODS",
    "VECTOR_CRAMER",
    "STATISTICS_FORM",
    "NORMAL_EQUATIONS",
    "lupu_gap",
    "two_level_residual",
    "lupu_product_residual",
    "gram3_residual",
    "nested4_residual",
    "gram4_residual",
    "gram_swap_residual",
    "gram_wrt",
    "gram_wrt_residual",
    "fit_vector_method",
    "fit_dataset_vector_method",
    "fit_normal_equations",
    "fit_statistics_form",
    "fit_all",
    "fits_agree",
    "mean",
    "variance",
    "covariance",
    "stddev",
    "chebyshev",
    "n_chebyshev",
    "n_chebyshev_schwarz_gap",
]

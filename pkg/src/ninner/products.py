"""Standard n-inner products, the n-iterated 2-inner product and their norms.

Argument convention: a product ``(x, y | x_n, ..., x_2)`` is stored as a
:class:`ConditionedPair` whose ``conditioners`` tuple is ``(x_n, ..., x_2)``.
Position 0 is ``x_n``, the conditioner peeled first by the iterated
recursion. The iterated product and its E_n factor are NOT invariant under
reordering the conditioners; the standard product is.
"""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple

from ninner import kernels
from ninner.core import (
    Vector,
    cross_gram,
    gram_determinant,
    gram_matrix,
    hadamard_bound,
    inner_product,
    is_linearly_dependent,
    norm_squared,
    solve_consistent,
    _det_rows,
)
from ninner.errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    NegativeNormError,
    PreconditionError,
)
from ninner.rng import trial_rng
from ninner.scalar import DEFAULT_TOL, EXACT, exact_sqrt, isclose, one


@dataclass(frozen=True)
class ConditionedPair:
    """Arguments ``(x, y | x_n, ..., x_2)`` of an n-product."""

    x: Vector
    y: Vector
    conditioners: Tuple[Vector, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "conditioners", tuple(self.conditioners))
        d = len(self.x)
        for v in (self.y, *self.conditioners):
            if len(v) != d:
                raise DimensionMismatchError(d, len(v))

    @property
    def n(self):
        return len(self.conditioners) + 1

    def vectors(self):
        return (self.x, self.y, *self.conditioners)

    def with_args(self, x=None, y=None):
        return ConditionedPair(self.x if x is None else x, self.y if y is None else y, self.conditioners)


class Norm(NamedTuple):
    """Norm result.

    ``squared`` is always exact in exact mode. ``value`` is the square root:
    a Fraction when the root is rational, otherwise a float approximation
    (then ``exact`` is False).
    """

    squared: object
    value: object
    exact: bool

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class ProductReport:
    value: object
    e_factor: object
    standard_value: object

    @property
    def residual(self):
        return self.value - self.e_factor * self.standard_value


def _require_conditioners(p):
    if not p.conditioners:
        raise PreconditionError("an n-product needs at least one conditioner (n >= 2)")


def _check_all(space, vectors):
    for v in vectors:
        space.check(v)


# --- standard n-inner product ---------------------------------------------


def _standard(space, x, y, conds):
    """Determinant with rows [x, *conds] and columns [y, *conds]; <x,y> if no conds."""
    rows = [x, *conds]
    cols = [y, *conds]
    return _det_rows(cross_gram(space, rows, cols), space.mode)


def standard_n_inner(space, p):
    """Standard n-inner product <x, y | x_n, ..., x_2> as a determinant of inner products."""
    _require_conditioners(p)
    _check_all(space, p.vectors())
    return _standard(space, p.x, p.y, p.conditioners)


def _standard_scale(space, x, y, conds):
    nx = math.sqrt(float(norm_squared(space, x)))
    ny = math.sqrt(float(norm_squared(space, y)))
    return nx * ny * float(hadamard_bound(space, conds))


# --- n-iterated 2-inner product -------------------------------------------


def _iterated_block(space, head, conds):
    """Iterated products among ``head`` vectors, conditioned on ``conds``.

    Returns the ``len(head)`` square block whose (i, j) entry is
    ``(head[i], head[j] | conds)_*``. All nested 2x2 determinants are
    shared, which is the memo table of the recursion built bottom-up.
    """
    vectors = [*head, *conds]
    g = gram_matrix(space, vectors).rows()
    steps = len(conds)
    if space.mode != EXACT:
        return kernels.eliminate_float(g, steps)
    den = math.lcm(*(v.denominator for r in g for v in r))
    ints = [[v.numerator * (den // v.denominator) for v in r] for r in g]
    block = kernels.eliminate_object(ints, steps)
    # Each elimination doubles the degree in the inner products.
    scale = den ** (1 << steps)
    return [[Fraction(v, scale) for v in r] for r in block]


def _iterated(space, x, y, conds):
    if not conds:
        return inner_product(space, x, y)
    return _iterated_block(space, [x, y], conds)[0][1]


def iterated_2_inner(space, p):
    """n-iterated 2-inner product ``(x, y | x_n, ..., x_2)_*``.

    Defined by nested 2x2 determinants, peeling ``x_n`` first:
    ``(x,y|x_n,R) = (x,y|R)(x_n,x_n|R) - (x,x_n|R)(x_n,y|R)``.
    """
    _require_conditioners(p)
    _check_all(space, p.vectors())
    return _iterated(space, p.x, p.y, p.conditioners)


def outer_block(space, p):
    """The 2x2 matrix whose determinant is the last step of the recursion.

    Entries are ``(a, b | R)_*`` for ``a, b`` in ``(x, x_n)`` with ``R`` the
    remaining conditioners, ordered ``[[x,y], [x,x_n]], [[x_n,y], [x_n,x_n]]``.
    """
    _require_conditioners(p)
    _check_all(space, p.vectors())
    top, rest = p.conditioners[0], list(p.conditioners[1:])
    if not rest:
        ip = lambda a, b: inner_product(space, a, b)  # noqa: E731
        return [[ip(p.x, p.y), ip(p.x, top)], [ip(top, p.y), ip(top, top)]]
    block = _iterated_block(space, [p.x, p.y, top], rest)
    return [[block[0][1], block[0][2]], [block[2][1], block[2][2]]]


def iterated_scale(space, x, y, conds):
    """Magnitude bound for float round-off in ``(x, y | conds)_*``.

    Runs the same recursion with every subtraction turned into an addition
    of absolute values, starting from products of norms.
    """
    vectors = [x, y, *conds]
    norms = [math.sqrt(abs(float(norm_squared(space, v)))) for v in vectors]
    s = [[a * b for b in norms] for a in norms]
    m = len(vectors)
    for piv in range(m - 1, 1, -1):
        for i in range(piv):
            for j in range(piv):
                s[i][j] = s[i][j] * s[piv][piv] + s[i][piv] * s[piv][j]
    return s[0][1]


# --- norms ----------------------------------------------------------------


def _root(squared, mode, tol, scale):
    if mode == EXACT:
        if squared < 0:
            raise NegativeNormError(f"negative squared norm {squared}")
        r = exact_sqrt(squared)
        if r is not None:
            return Norm(squared, r, True)
        return Norm(squared, math.sqrt(squared), False)
    if squared < 0:
        if squared >= -tol * scale:
            squared = 0.0
        else:
            raise NegativeNormError(f"squared norm {squared!r} below -tol*scale")
    return Norm(squared, math.sqrt(squared), False)


def standard_n_norm(space, v, conditioners, tol=DEFAULT_TOL):
    """``||v | x_n, ..., x_2|| = sqrt(<v, v | x_n, ..., x_2>)``."""
    p = ConditionedPair(v, v, conditioners)
    sq = standard_n_inner(space, p)
    scale = _standard_scale(space, v, v, p.conditioners) if space.mode != EXACT else 0
    return _root(sq, space.mode, tol, scale)


def weak_n_norm(space, v, conditioners, tol=DEFAULT_TOL):
    """Weak n-norm generated by the iterated product."""
    p = ConditionedPair(v, v, conditioners)
    sq = iterated_2_inner(space, p)
    scale = iterated_scale(space, v, v, p.conditioners) if space.mode != EXACT else 0
    return _root(sq, space.mode, tol, scale)


# --- representation -------------------------------------------------------


def e_factor(space, conditioners):
    """E_n = prod_{k=2}^{n-1} <x_k, x_k | x_{k-1}, ..., x_2>^(2^(n-k-1)).

    ``<x_k, x_k | x_{k-1}, ..., x_2>`` equals the Gram determinant of
    ``x_2, ..., x_k``; for k = 2 it is ``<x_2, x_2>``. ``conditioners`` is
    ``(x_n, ..., x_2)``.
    """
    conds = list(conditioners)
    if not conds:
        raise PreconditionError("E_n needs at least one conditioner")
    _check_all(space, conds)
    n = len(conds) + 1
    ascending = conds[::-1]  # x_2, x_3, ..., x_n
    e = one(space.mode)
    for k in range(2, n):
        e *= gram_determinant(space, ascending[: k - 1]) ** (1 << (n - k - 1))
    return e


def representation_report(space, p, tol=DEFAULT_TOL):
    """Evaluate the iterated product, E_n and the standard product independently.

    Raises :class:`InternalConsistencyError` if ``value != E_n * standard``.
    """
    _require_conditioners(p)
    value = iterated_2_inner(space, p)
    e = e_factor(space, p.conditioners)
    std = standard_n_inner(space, p)
    report = ProductReport(value, e, std)
    if space.mode == EXACT:
        ok = report.residual == 0
    else:
        ok = isclose(value, e * std, tol, iterated_scale(space, p.x, p.y, p.conditioners))
    if not ok:
        raise InternalConsistencyError(
            f"iterated product {value} != E_n {e} * standard {std}"
        )
    return report


# --- Schwarz inequality ---------------------------------------------------


class EqualityCase(NamedTuple):
    """Outcome of the Schwarz equality-case search ``y = mu*x + u``, ``u`` in span(conditioners).

    ``in_span`` is True when such a decomposition exists for some real mu;
    ``holds`` additionally requires ``mu >= 0``. ``degenerate`` flags
    linearly dependent conditioners, where every product vanishes.
    """

    holds: bool
    in_span: bool
    mu: object
    degenerate: bool


def schwarz_gap(space, p):
    """``(x,x|...)_* (y,y|...)_* - (x,y|...)_*^2``; never negative."""
    _require_conditioners(p)
    _check_all(space, p.vectors())
    b = _iterated_block(space, [p.x, p.y], p.conditioners)
    return b[0][0] * b[1][1] - b[0][1] * b[1][0]


def schwarz_equality(space, p, tol=DEFAULT_TOL):
    """Decide whether ``y - mu*x`` lies in span(conditioners) via a normal-equation solve."""
    _require_conditioners(p)
    _check_all(space, p.vectors())
    conds = list(p.conditioners)
    zero_mu = 0 if space.mode == EXACT else 0.0
    if is_linearly_dependent(space, conds, tol):
        return EqualityCase(True, True, None, True)
    basis = [p.x, *conds]
    g = gram_matrix(space, basis).rows()
    rhs = [inner_product(space, b, p.y) for b in basis]
    coeffs = solve_consistent(g, rhs, space.mode, tol)
    if coeffs is None:
        return EqualityCase(False, False, None, False)
    r = p.y
    for c, b in zip(coeffs, basis):
        r = r - b * c
    res = norm_squared(space, r)
    if space.mode == EXACT:
        in_span = res == 0
    else:
        in_span = res <= tol * max(float(norm_squared(space, p.y)), 1e-300)
    if is_linearly_dependent(space, basis, tol):
        mu = zero_mu
    else:
        mu = coeffs[0]
    if space.mode == EXACT:
        nonneg = mu >= 0
    else:
        # mu is a ratio of lengths, so compare against tol times |y|/|x|.
        ratio = (float(norm_squared(space, p.y)) / max(float(norm_squared(space, p.x)), 1e-300)) ** 0.5
        nonneg = mu >= -tol * max(ratio, 1.0)
    return EqualityCase(in_span and nonneg, in_span, mu, False)


# --- axiom conformance ----------------------------------------------------


STANDARD = "standard"
ITERATED = "iterated"

AXIOMS = (
    "I1", "I2", "I3", "I4", "I5", "I6",
    "P1", "P2", "P3", "P4", "P5",
    "C1", "C2", "C3", "C4",
)


@dataclass
class CheckReport:
    axiom: str
    target: str
    n: int
    passed: bool
    trials: int
    witness: Optional[dict] = None


def _product_fn(target):
    return _standard if target == STANDARD else _iterated


def _scale_fn(space, target, x, y, conds):
    if space.mode == EXACT:
        return 0
    if target == STANDARD:
        return _standard_scale(space, x, y, conds)
    return iterated_scale(space, x, y, conds)


def _eq(space, a, b, tol, scale):
    return isclose(a, b, tol, scale)


def _nonneg(space, a, tol, scale):
    return a >= 0 if space.mode == EXACT else a >= -tol * scale


def _is_zero(space, a, tol, scale):
    return a == 0 if space.mode == EXACT else abs(a) <= tol * scale


def _permutation_order(n):
    """Transpositions of the first slot with each conditioner (innermost first), then the rest."""
    ident = tuple(range(n))
    first = []
    for k in range(n - 1, 0, -1):
        t = list(ident)
        t[0], t[k] = t[k], t[0]
        first.append(tuple(t))
    yield from first
    for q in itertools.permutations(ident):
        if q != ident and q not in first:
            yield q


def _check_positivity(space, f, target, vs, rng, tol, use_norm=False):
    x, conds = vs[0], vs[1:]
    if rng is not None and rng.randbelow(2):
        x = rng.in_span(conds, space.mode)
    val = f(space, x, x, conds)
    scale = _scale_fn(space, target, x, x, conds)
    dependent = is_linearly_dependent(space, [x, *conds], tol)
    if use_norm:
        _root(val, space.mode, tol, scale)
    ok = _nonneg(space, val, tol, scale) and (_is_zero(space, val, tol, scale) == dependent)
    if ok:
        return None
    return {"vectors": [x, *conds], "value": val, "dependent": dependent}


def _check_one(space, axiom, target, vs, rng, tol):
    """Run one axiom instance on ``vs = [a, b, c_n, ..., c_2]``; return a witness or None."""
    f = _product_fn(target)
    x, y, conds = vs[0], vs[1], list(vs[2:])
    n = len(conds) + 1
    mode = space.mode

    if axiom in ("I1", "P1", "C1"):
        return _check_positivity(space, f, target, [x, *conds], rng, tol, use_norm=axiom == "C1")

    if axiom == "I2":
        group = [x, *conds]
        base = f(space, x, x, conds)
        if rng is not None:
            perms = [tuple(rng.shuffle(range(n)))]
        else:
            perms = _permutation_order(n)
        for perm in perms:
            q = [group[i] for i in perm]
            other = f(space, q[0], q[0], q[1:])
            scale = max(_scale_fn(space, target, x, x, conds), _scale_fn(space, target, q[0], q[0], q[1:]))
            if not _eq(space, base, other, tol, scale):
                return {
                    "vectors": group,
                    "permutation": list(perm),
                    "value": base,
                    "permuted_value": other,
                }
        return None

    if axiom in ("P2", "C2"):
        lhs = f(space, x, x, conds)
        swapped = [x, *conds[1:]]
        rhs = f(space, conds[0], conds[0], swapped)
        scale = max(_scale_fn(space, target, x, x, conds), _scale_fn(space, target, conds[0], conds[0], swapped))
        if _eq(space, lhs, rhs, tol, scale):
            return None
        return {"vectors": [x, *conds], "value": lhs, "swapped_value": rhs}

    if axiom in ("I3", "P3"):
        a, b = f(space, x, y, conds), f(space, y, x, conds)
        if _eq(space, a, b, tol, _scale_fn(space, target, x, y, conds)):
            return None
        return {"vectors": [x, y, *conds], "value": a, "swapped_value": b}

    if axiom in ("I4", "P4", "C3"):
        alpha = rng.scalar(mode) if rng is not None else (Fraction(-3, 2) if mode == EXACT else -1.5)
        if axiom == "C3":
            a = f(space, x * alpha, x * alpha, conds)
            b = alpha * alpha * f(space, x, x, conds)
            scale = _scale_fn(space, target, x, x, conds) * float(alpha) ** 2
        else:
            a = f(space, x * alpha, y, conds)
            b = alpha * f(space, x, y, conds)
            scale = _scale_fn(space, target, x, y, conds) * abs(float(alpha))
        if _eq(space, a, b, tol, scale):
            return None
        return {"vectors": [x, y, *conds], "alpha": alpha, "value": a, "expected": b}

    if axiom in ("I5", "P5"):
        x2 = rng.vector(space.dim, mode) if rng is not None else y
        a = f(space, x + x2, y, conds)
        b = f(space, x, y, conds) + f(space, x2, y, conds)
        scale = _scale_fn(space, target, x, y, conds) + _scale_fn(space, target, x2, y, conds) + _scale_fn(space, target, x + x2, y, conds)
        if _eq(space, a, b, tol, scale):
            return None
        return {"vectors": [x, x2, y, *conds], "value": a, "expected": b}

    if axiom == "I6":
        v = rng.in_span(conds, mode) if rng is not None else conds[0]
        val = f(space, v, y, conds)
        if _is_zero(space, val, tol, _scale_fn(space, target, v, y, conds)):
            return None
        return {"vectors": [v, y, *conds], "value": val}

    if axiom == "C4":
        nx = f(space, x, x, conds)
        ny = f(space, y, y, conds)
        nxy = f(space, x + y, x + y, conds)
        # ||x+y|| <= ||x|| + ||y||  <=>  d <= 2 sqrt(nx ny) with d = nxy - nx - ny
        d = nxy - nx - ny
        if mode == EXACT:
            ok = d <= 0 or d * d <= 4 * nx * ny
        else:
            scale = _scale_fn(space, target, x + y, x + y, conds) + _scale_fn(space, target, x, x, conds) + _scale_fn(space, target, y, y, conds)
            ok = d <= 2 * math.sqrt(max(nx, 0.0) * max(ny, 0.0)) + tol * scale
        if ok:
            return None
        return {"vectors": [x, y, *conds], "norm_sq_sum": nxy, "norm_sq_x": nx, "norm_sq_y": ny}

    raise ValueError(f"unknown axiom {axiom!r}")


def default_target(axiom):
    return STANDARD if axiom.startswith("I") else ITERATED


def axiom_check(space, axiom, samples, seed, n=3, target=None, fixtures=(), tol=DEFAULT_TOL):
    """Randomized conformance check of one axiom.

    ``I*`` axioms default to the standard product, ``P*``/``C*`` to the
    iterated one. ``fixtures`` are vector tuples ``(v_1, v_2, ..., v_n)``
    tried exhaustively before the random samples; for I2 every permutation
    of a fixture is examined. I2 against the iterated product is expected
    to fail for n >= 3, and the report then carries the witness.
    """
    if axiom not in AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    if n < 2:
        raise PreconditionError("n must be >= 2")
    target = target or default_target(axiom)
    if target not in (STANDARD, ITERATED):
        raise ValueError(f"unknown target {target!r}")

    trials = 0
    for fx in fixtures:
        fx = list(fx)
        if len(fx) != n:
            raise PreconditionError(f"fixture has {len(fx)} vectors, expected {n}")
        _check_all(space, fx)
        vs = [fx[0], fx[0], *fx[1:]]
        trials += 1
        w = _check_one(space, axiom, target, vs, None, tol)
        if w is not None:
            return CheckReport(axiom, target, n, False, trials, w)
    for t in range(samples):
        rng = trial_rng(seed, t)
        conds = [rng.vector(space.dim, space.mode) for _ in range(n - 1)]
        x = rng.vector(space.dim, space.mode)
        y = rng.vector(space.dim, space.mode)
        trials += 1
        w = _check_one(space, axiom, target, [x, y, *conds], rng, tol)
        if w is not None:
            return CheckReport(axiom, target, n, False, trials, w)
    return CheckReport(axiom, target, n, True, trials, None)


__all__ = [
    "ConditionedPair",
    "Norm",
    "ProductReport",
    "CheckReport",
    "EqualityCase",
    "AXIOMS",
    "STANDARD",
    "ITERATED",
    "standard_n_inner",
    "standard_n_norm",
    "iterated_2_inner",
    "outer_block",
    "iterated_scale",
    "weak_n_norm",
    "e_factor",
    "representation_report",
    "schwarz_gap",
    "schwarz_equality",
    "axiom_check",
    "default_target",
]


"""Vectors, weighted inner-product spaces, determinants and Gram matrices."""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Optional, Tuple

from ninner import kernels
from ninner.errors import DimensionMismatchError, PreconditionError, SingularSystemError
from ninner.scalar import DEFAULT_TOL, EXACT, FLOAT, check_mode, coerce, one, zero


class Vector:
    """Immutable coordinate vector over one scalar mode."""

    __slots__ = ("coords", "mode")

    def __init__(self, coords, mode=EXACT):
        check_mode(mode)
        object.__setattr__(self, "coords", tuple(coerce(c, mode) for c in coords))
        object.__setattr__(self, "mode", mode)

    @classmethod
    def _raw(cls, coords, mode):
        v = object.__new__(cls)
        object.__setattr__(v, "coords", tuple(coords))
        object.__setattr__(v, "mode", mode)
        return v

    @classmethod
    def zeros(cls, dim, mode=EXACT):
        return cls._raw([zero(mode)] * dim, mode)

    @classmethod
    def basis(cls, dim, i, mode=EXACT):
        c = [zero(mode)] * dim
        c[i] = one(mode)
        return cls._raw(c, mode)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, Vector):
            return NotImplemented
        return self.mode == other.mode and self.coords == other.coords

    def __hash__(self):
        return hash((self.mode, self.coords))

    def __repr__(self):
        return f"Vector({[str(c) for c in self.coords]}, mode={self.mode!r})"

    def _check(self, other):
        if not isinstance(other, Vector):
            raise TypeError(f"expected Vector, got {type(other).__name__}")
        if other.mode != self.mode:
            raise TypeError(f"cannot mix {self.mode} and {other.mode} vectors")
        if len(other) != len(self):
            raise DimensionMismatchError(len(self), len(other))

    def __add__(self, other):
        self._check(other)
        return Vector._raw([a + b for a, b in zip(self.coords, other.coords)], self.mode)

    def __sub__(self, other):
        self._check(other)
        return Vector._raw([a - b for a, b in zip(self.coords, other.coords)], self.mode)

    def __neg__(self):
        return Vector._raw([-a for a in self.coords], self.mode)

    def __mul__(self, alpha):
        if isinstance(alpha, Vector):
            return NotImplemented
        alpha = coerce(alpha, self.mode)
        return Vector._raw([alpha * a for a in self.coords], self.mode)

    __rmul__ = __mul__

    def is_zero(self):
        return all(c == 0 for c in self.coords)


def combination(coeffs, vectors):
    """Return sum(c * v) over paired coefficients and vectors."""
    vectors = list(vectors)
    if not vectors:
        raise PreconditionError("empty combination")
    out = vectors[0] * 0
    for c, v in zip(coeffs, vectors):
        out = out + v * c
    return out


@dataclass(frozen=True)
class SquareMatrix:
    """Dense square matrix stored row-major."""

    order: int
    entries: Tuple
    mode: str = EXACT

    def __post_init__(self):
        check_mode(self.mode)
        if self.order < 1:
            raise PreconditionError("matrix order must be positive")
        if len(self.entries) != self.order * self.order:
            raise DimensionMismatchError(self.order * self.order, len(self.entries), "entry list")

    @classmethod
    def from_rows(cls, rows, mode=EXACT):
        rows = [list(r) for r in rows]
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise DimensionMismatchError(n, len(r), "matrix row")
        return cls(n, tuple(coerce(v, mode) for r in rows for v in r), mode)

    @classmethod
    def identity(cls, order, mode=EXACT):
        z, o = zero(mode), one(mode)
        return cls(order, tuple(o if i == j else z for i in range(order) for j in range(order)), mode)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.order + j]

    def rows(self):
        n = self.order
        return [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]

    def transpose(self):
        n = self.order
        return SquareMatrix(n, tuple(self.entries[j * n + i] for i in range(n) for j in range(n)), self.mode)

    def is_symmetric(self, tol=DEFAULT_TOL):
        n = self.order
        if self.mode == EXACT:
            return all(self[i, j] == self[j, i] for i in range(n) for j in range(i))
        scale = max((abs(v) for v in self.entries), default=0.0)
        return all(abs(self[i, j] - self[j, i]) <= tol * scale for i in range(n) for j in range(i))


def _det_rows(rows, mode):
    n = len(rows)
    if n == 0:
        return one(mode)
    if n == 1:
        return rows[0][0]
    if mode == FLOAT:
        return kernels.det_float(rows)
    # Clear denominators row by row, then run integer Bareiss.
    int_rows = []
    scale = 1
    for r in rows:
        m = lcm(*(v.denominator for v in r))
        scale *= m
        int_rows.append([v.numerator * (m // v.denominator) for v in r])
    return Fraction(kernels.det_int(int_rows), scale)


def determinant(m):
    """Exact (Bareiss) or partially pivoted determinant of a SquareMatrix."""
    return _det_rows(m.rows(), m.mode)


class InnerSpace:
    """R^d with the inner product <x, y> = x^T W y for a symmetric positive definite W."""

    __slots__ = ("dim", "weight", "mode", "_identity", "_wrows")

    def __init__(self, dim, weight=None, mode=EXACT, tol=DEFAULT_TOL):
        check_mode(mode)
        if dim < 1:
            raise PreconditionError("dimension must be positive")
        if weight is None:
            weight = SquareMatrix.identity(dim, mode)
            is_identity = True
        else:
            if not isinstance(weight, SquareMatrix):
                weight = SquareMatrix.from_rows(weight, mode)
            if weight.mode != mode:
                weight = SquareMatrix.from_rows(weight.rows(), mode)
            if weight.order != dim:
                raise DimensionMismatchError(dim, weight.order, "weight matrix")
            if not weight.is_symmetric(tol):
                raise PreconditionError("weight matrix is not symmetric")
            rows = weight.rows()
            for k in range(1, dim + 1):
                if not _det_rows([r[:k] for r in rows[:k]], mode) > 0:
                    raise PreconditionError(f"weight matrix is not positive definite (leading minor {k})")
            is_identity = weight == SquareMatrix.identity(dim, mode)
        self.dim = dim
        self.weight = weight
        self.mode = mode
        self._identity = is_identity
        self._wrows = weight.rows()

    @classmethod
    def euclidean(cls, dim, mode=EXACT):
        return cls(dim, None, mode)

    def __repr__(self):
        kind = "euclidean" if self._identity else "weighted"
        return f"InnerSpace(dim={self.dim}, {kind}, mode={self.mode!r})"

    @property
    def is_euclidean(self):
        return self._identity

    def vector(self, coords):
        v = Vector(coords, self.mode)
        self.check(v)
        return v

    def zero_vector(self):
        return Vector.zeros(self.dim, self.mode)

    def check(self, v):
        if not isinstance(v, Vector):
            raise TypeError(f"expected Vector, got {type(v).__name__}")
        if len(v) != self.dim:
            raise DimensionMismatchError(self.dim, len(v))
        if v.mode != self.mode:
            raise TypeError(f"{v.mode} vector used in a {self.mode} space")


def inner_product(space, x, y):
    """<x, y> = x^T W y."""
    if len(x) != len(y):
        raise DimensionMismatchError(len(x), len(y))
    space.check(x)
    space.check(y)
    if space._identity:
        return sum((a * b for a, b in zip(x.coords, y.coords)), zero(space.mode))
    total = zero(space.mode)
    ycoords = y.coords
    for xi, wrow in zip(x.coords, space._wrows):
        if xi:
            total += xi * sum((w * b for w, b in zip(wrow, ycoords)), zero(space.mode))
    return total


def norm_squared(space, v):
    return inner_product(space, v, v)


def cross_gram(space, rows, cols):
    """Matrix of inner products <rows[i], cols[j]> as a list of lists."""
    return [[inner_product(space, r, c) for c in cols] for r in rows]


def gram_matrix(space, vs):
    vs = list(vs)
    if not vs:
        raise PreconditionError("Gram matrix of an empty list")
    n = len(vs)
    g = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = inner_product(space, vs[i], vs[j])
    return SquareMatrix(n, tuple(v for r in g for v in r), space.mode)


def gram_determinant(space, vs):
    return determinant(gram_matrix(space, vs))


def is_linearly_dependent(space, vs, tol=DEFAULT_TOL):
    """Gram-determinant dependence test.

    Float mode compares against ``tol`` times the product of squared norms,
    which is the Hadamard bound on the Gram determinant.
    """
    vs = list(vs)
    if not vs:
        raise PreconditionError("dependence test on an empty list")
    for v in vs:
        space.check(v)
    if len(vs) > space.dim:
        return True
    g = gram_determinant(space, vs)
    if space.mode == EXACT:
        return g == 0
    bound = prod(norm_squared(space, v) for v in vs)
    return g <= tol * bound


def cramer_solve(rows, rhs, mode):
    """Solve a square system by Cramer's rule using :func:`determinant`."""
    n = len(rows)
    a = SquareMatrix.from_rows(rows, mode)
    d = determinant(a)
    if d == 0:
        raise SingularSystemError("singular system", witness=d)
    out = []
    for k in range(n):
        replaced = [r[:k] + [rhs[i]] + r[k + 1:] for i, r in enumerate(rows)]
        out.append(determinant(SquareMatrix.from_rows(replaced, mode)) / d)
    return out


def solve_consistent(rows, rhs, mode, tol=DEFAULT_TOL) -> Optional[list]:
    """One solution of a possibly singular square system, or ``None``.

    Gauss-Jordan elimination; free variables are set to zero. Float mode
    treats pivots below ``tol`` times the largest entry as zero.
    """
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    if mode == FLOAT:
        cutoff = tol * max((abs(v) for r in a for v in r), default=0.0)
    else:
        cutoff = 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = max(range(r, n), key=lambda i: abs(a[i][c]), default=None)
        if p is None or abs(a[p][c]) <= cutoff:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [v / piv for v in a[r]]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if abs(a[i][ncols]) > cutoff:
            return None
    sol = [zero(mode)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = a[i][ncols]
    return sol


def hadamard_bound(space, vs):
    """Product of squared norms: an upper bound on |Gram determinant|."""
    return prod((norm_squared(space, v) for v in vs), start=one(space.mode))


__all__ = [
    "Vector",
    "SquareMatrix",
    "InnerSpace",
    "combination",
    "inner_product",
    "norm_squared",
    "cross_gram",
    "gram_matrix",
    "gram_determinant",
    "is_linearly_dependent",
    "determinant",
    "cramer_solve",
    "solve_consistent",
    "hadamard_bound",
]


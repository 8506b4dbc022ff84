"""Dodgson-type determinant identities and condensation.

Minors use the 1-based row/column indices of the classical notation
``|a_{i1,j1} ... a_{is,js}|``.
"""

from dataclasses import dataclass
from typing import Tuple

from ninner.core import _det_rows, determinant
from ninner.errors import PreconditionError
from ninner.products import _check_all, _standard
from ninner.scalar import DEFAULT_TOL, EXACT


@dataclass(frozen=True)
class MinorSpec:
    """Rows and columns (1-based, strictly increasing) of a sub-determinant."""

    rows: Tuple[int, ...]
    cols: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.rows) != len(self.cols):
            raise PreconditionError("minor needs as many rows as columns")
        if not self.rows:
            raise PreconditionError("empty minor")
        for seq in (self.rows, self.cols):
            if any(b <= a for a, b in zip(seq, seq[1:])):
                raise PreconditionError(f"indices must be strictly increasing: {seq}")

    def validate(self, order):
        for i in (*self.rows, *self.cols):
            if not 1 <= i <= order:
                raise PreconditionError(f"index {i} out of range 1..{order}")


def _ordered_minor(m, rows, cols):
    """Determinant of the submatrix taken in the given (not necessarily sorted) order.

    Reordering rows or columns flips the sign by the permutation parity;
    the condensation bookkeeping relies on that.
    """
    if len(rows) != len(cols):
        raise PreconditionError("minor needs as many rows as columns")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise PreconditionError("repeated index in minor")
    n = m.order
    for i in (*rows, *cols):
        if not 1 <= i <= n:
            raise PreconditionError(f"index {i} out of range 1..{n}")
    sub = [[m[i - 1, j - 1] for j in cols] for i in rows]
    return _det_rows(sub, m.mode)


def minor(m, spec):
    spec.validate(m.order)
    return _ordered_minor(m, spec.rows, spec.cols)


def _need_order3(m):
    if m.order < 3:
        raise PreconditionError("Dodgson identities need order >= 3")


def dodgson_residual_e40(m):
    """Leading-block form: |A_{1..n-2}| * |A| minus the 2x2 determinant of bordered minors."""
    _need_order3(m)
    n = m.order
    core = tuple(range(1, n - 1))
    lhs = _ordered_minor(m, core, core) * determinant(m)
    a = _ordered_minor(m, core + (n - 1,), core + (n - 1,))
    b = _ordered_minor(m, core + (n - 1,), core + (n,))
    c = _ordered_minor(m, core + (n,), core + (n - 1,))
    d = _ordered_minor(m, core + (n,), core + (n,))
    return lhs - (a * d - b * c)


def dodgson_residual_e41(m):
    """Interior form (Desnanot-Jacobi): |A_{2..n-1}| * |A| minus the 2x2 determinant of corner minors.

    For order 3 the interior minor is the single entry ``a_{2,2}``.
    """
    _need_order3(m)
    n = m.order
    top = tuple(range(1, n))
    bottom = tuple(range(2, n + 1))
    interior = tuple(range(2, n))
    lhs = _ordered_minor(m, interior, interior) * determinant(m)
    a = _ordered_minor(m, top, top)
    b = _ordered_minor(m, top, bottom)
    c = _ordered_minor(m, bottom, top)
    d = _ordered_minor(m, bottom, bottom)
    return lhs - (a * d - b * c)


@dataclass(frozen=True)
class CondensationReport:
    value: object
    rotations: int
    fell_back: bool
    fragile: bool


def _condense(rows, tol=None):
    """Dodgson condensation; ``None`` when an interior divisor vanishes.

    With ``tol`` set (float mode) a divisor also counts as zero when it is
    below ``tol`` times the magnitude of the products that formed it, since
    an exact cancellation then survives only as rounding noise.
    """
    cur = [list(r) for r in rows]
    mag = [[abs(v) for v in r] for r in cur] if tol is not None else None
    prev = prev_mag = None
    while len(cur) > 1:
        k = len(cur)
        nxt = [
            [cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j] for j in range(k - 1)]
            for i in range(k - 1)
        ]
        if mag is not None:
            nmag = [
                [abs(cur[i][j] * cur[i + 1][j + 1]) + abs(cur[i][j + 1] * cur[i + 1][j]) for j in range(k - 1)]
                for i in range(k - 1)
            ]
        if prev is not None:
            for i in range(k - 1):
                for j in range(k - 1):
                    d = prev[i + 1][j + 1]
                    if d == 0 or (mag is not None and abs(d) <= tol * prev_mag[i + 1][j + 1]):
                        return None
                    nxt[i][j] = nxt[i][j] / d
                    if mag is not None:
                        nmag[i][j] = nmag[i][j] / abs(d)
        prev, cur = cur, nxt
        if mag is not None:
            prev_mag, mag = mag, nmag
    return cur[0][0]


def condensation_report(m):
    """Condensation determinant with the zero-divisor fallback recorded.

    On a zero interior divisor the first row is cycled to the bottom, which
    multiplies the determinant by ``(-1)^(n-1)``. After ``n`` failed
    rotations the core determinant is used instead.
    """
    rows = m.rows()
    n = m.order
    fragile = m.mode != EXACT
    step_sign = -1 if n % 2 == 0 else 1
    sign = 1
    tol = DEFAULT_TOL if fragile else None
    for r in range(n):
        value = _condense(rows, tol)
        if value is not None:
            return CondensationReport(value * sign, r, False, fragile)
        rows = rows[1:] + rows[:1]
        sign *= step_sign
    return CondensationReport(determinant(m), n, True, fragile)


def condensation_determinant(m):
    return condensation_report(m).value


def representation_bridge_check(space, p):
    """Residual of the 2x2 standard-product identity behind the representation identity.

    With conditioners ``(x_{n+1}, x_n, ..., x_2)`` and ``R = (x_n, ..., x_2)``::

        | <x,y|R>        <x,x_{n+1}|R>       |
        | <x_{n+1},y|R>  <x_{n+1},x_{n+1}|R> |  =  <x,y|x_{n+1},R> * <x_n,x_n|x_{n-1},...,x_2>

    where the last factor is ``<x_2, x_2>`` when R has one element.
    """
    conds = list(p.conditioners)
    if len(conds) < 2:
        raise PreconditionError("bridge identity needs at least two conditioners")
    _check_all(space, p.vectors())
    top, rest = conds[0], conds[1:]
    a = _standard(space, p.x, p.y, rest)
    b = _standard(space, p.x, top, rest)
    c = _standard(space, top, p.y, rest)
    d = _standard(space, top, top, rest)
    rhs = _standard(space, p.x, p.y, conds) * _standard(space, rest[0], rest[0], rest[1:])
    return (a * d - b * c) - rhs


__all__ = [
    "MinorSpec",
    "CondensationReport",
    "minor",
    "dodgson_residual_e40",
    "dodgson_residual_e41",
    "condensation_determinant",
    "condensation_report",
    "representation_bridge_check",
]

"""Pure-Python hot kernels. Same API as the compiled ``_ckernels`` module."""


def det_float(rows):
    """Determinant by Gaussian elimination with partial pivoting."""
    n = len(rows)
    a = [[float(v) for v in r] for r in rows]
    det = 1.0
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if a[p][k] == 0.0:
            return 0.0
        if p != k:
            a[k], a[p] = a[p], a[k]
            det = -det
        pivot = a[k][k]
        det *= pivot
        row_k = a[k]
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f != 0.0:
                row_i = a[i]
                for j in range(k + 1, n):
                    row_i[j] -= f * row_k[j]
    return det


def det_int(rows):
    """Bareiss fraction-free determinant of an integer matrix.

    Every division is exact (Sylvester's identity), so intermediate values
    stay integers bounded by minors of the input.
    """
    n = len(rows)
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        row_k = a[k]
        for i in range(k + 1, n):
            row_i = a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _eliminate(a, steps):
    m = len(a)
    for p in range(m - 1, m - 1 - steps, -1):
        row_p = a[p]
        piv = row_p[p]
        for i in range(p):
            row_i = a[i]
            aip = row_i[p]
            for j in range(p):
                row_i[j] = row_i[j] * piv - aip * row_p[j]
    size = m - steps
    return [a[i][:size] for i in range(size)]


def eliminate_float(rows, steps):
    """Division-free elimination of the trailing ``steps`` pivots.

    Pivot ``p`` replaces ``a[i][j]`` by ``a[i][j]*a[p][p] - a[i][p]*a[p][j]``
    for every ``i, j < p``. Applied to the Gram matrix of
    ``[x, y, x_n, ..., x_2]`` this evaluates every nested 2x2 determinant of
    the iterated 2-inner product in one sweep.
    """
    return _eliminate([[float(v) for v in r] for r in rows], steps)


def eliminate_object(rows, steps):
    """:func:`eliminate_float` on arbitrary number objects (ints, Fractions)."""
    return _eliminate([list(r) for r in rows], steps)

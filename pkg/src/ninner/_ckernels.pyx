# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Mirrors ``ninner._pykernels`` exactly."""

from libc.math cimport fabs
from libc.stdlib cimport free, malloc


cdef double* _to_buffer(rows, Py_ssize_t n, Py_ssize_t m) except NULL:
    cdef double* buf = <double*>malloc((n * m + 1) * sizeof(double))
    cdef Py_ssize_t i, j
    if buf == NULL:
        raise MemoryError()
    for i in range(n):
        r = rows[i]
        for j in range(m):
            buf[i * m + j] = r[j]
    return buf


def det_float(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k, p
    cdef double det = 1.0, pivot, f, t, best
    if n == 0:
        return 1.0
    cdef double* a = _to_buffer(rows, n, n)
    try:
        for k in range(n):
            p = k
            best = fabs(a[k * n + k])
            for i in range(k + 1, n):
                if fabs(a[i * n + k]) > best:
                    best = fabs(a[i * n + k])
                    p = i
            if a[p * n + k] == 0.0:
                return 0.0
            if p != k:
                for j in range(n):
                    t = a[k * n + j]
                    a[k * n + j] = a[p * n + j]
                    a[p * n + j] = t
                det = -det
            pivot = a[k * n + k]
            det *= pivot
            for i in range(k + 1, n):
                f = a[i * n + k] / pivot
                if f != 0.0:
                    for j in range(k + 1, n):
                        a[i * n + j] -= f * a[k * n + j]
        return det
    finally:
        free(a)


def det_int(rows):
    cdef Py_ssize_t n = len(rows)
    cdef Py_ssize_t i, j, k
    cdef int sign = 1
    if n == 0:
        return 1
    cdef list a = [list(r) for r in rows]
    cdef list row_i, row_k
    prev = 1
    for k in range(n - 1):
        row_k = <list>a[k]
        if row_k[k] == 0:
            for i in range(k + 1, n):
                if (<list>a[i])[k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
            row_k = <list>a[k]
        akk = row_k[k]
        for i in range(k + 1, n):
            row_i = <list>a[i]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * (<list>a[n - 1])[n - 1]


def eliminate_float(rows, Py_ssize_t steps):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t i, j, p, size = m - steps
    cdef double piv, aip
    cdef double* a = _to_buffer(rows, m, m)
    try:
        for p in range(m - 1, m - 1 - steps, -1):
            piv = a[p * m + p]
            for i in range(p):
                aip = a[i * m + p]
                for j in range(p):
                    a[i * m + j] = a[i * m + j] * piv - aip * a[p * m + j]
        return [[a[i * m + j] for j in range(size)] for i in range(size)]
    finally:
        free(a)


def eliminate_object(rows, Py_ssize_t steps):
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t i, j, p, size = m - steps
    cdef list a = [list(r) for r in rows]
    cdef list row_i, row_p
    for p in range(m - 1, m - 1 - steps, -1):
        row_p = <list>a[p]
        piv = row_p[p]
        for i in range(p):
            row_i = <list>a[i]
            aip = row_i[p]
            for j in range(p):
                row_i[j] = row_i[j] * piv - aip * row_p[j]
    return [(<list>a[i])[:size] for i in range(size)]

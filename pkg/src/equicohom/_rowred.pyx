# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled fraction-free row reduction over the integers.

Mirrors equicohom._rowred_py exactly; entries stay arbitrary-precision Python
ints, Cython only strips the interpreter overhead from the inner loops.
"""

from math import gcd

IMPLEMENTATION = "cython"


cdef void _make_primitive(list row):
    cdef Py_ssize_t j, n = len(row)
    g = 0
    for j in range(n):
        x = row[j]
        if x:
            g = gcd(g, x)
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] = row[j] // g


def fraction_free_rref(list rows):
    """Gauss-Jordan eliminate integer ``rows`` without leaving the integers.

    Same contract as ``equicohom._rowred_py.fraction_free_rref``: returns
    ``(rows, pivots)`` with rows fully reduced, primitive, positive pivot
    entries and zero rows at the bottom.
    """
    cdef Py_ssize_t m = len(rows)
    cdef Py_ssize_t n = len(rows[0]) if m else 0
    cdef Py_ssize_t r = 0, c, i, j, p
    cdef list pr, ri, pivots = []
    for c in range(n):
        p = -1
        for i in range(r, m):
            if (<list>rows[i])[c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pr = <list>rows[r]
        if pr[c] < 0:
            for j in range(n):
                pr[j] = -pr[j]
        a = pr[c]
        for i in range(m):
            if i == r:
                continue
            ri = <list>rows[i]
            b = ri[c]
            if not b:
                continue
            for j in range(n):
                ri[j] = a * ri[j] - b * pr[j]
            _make_primitive(ri)
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(len(pivots)):
        _make_primitive(<list>rows[i])
    return rows, pivots

"""Pure Python fraction-free row reduction over the integers.

This is the fallback for the compiled kernel in ``_rowred.pyx``; both must
produce bit-identical output.  All exact linear algebra in the package funnels
through :func:`fraction_free_rref`.
"""

from math import gcd

IMPLEMENTATION = "python"


def _make_primitive(row):
    """Divide a row by the gcd of its entries and return it (in place)."""
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        for j in range(len(row)):
            row[j] //= g
    return row


def fraction_free_rref(rows):
    """Gauss-Jordan eliminate integer ``rows`` without leaving the integers.

    Pivots are chosen in the leftmost nonzero column, scanning rows top to
    bottom (no reordering beyond the swap into pivot position), so the pivot
    columns realize the caller's column order as the tie-break rule.

    Returns ``(rows, pivots)`` where ``rows`` is fully reduced (zeros above and
    below every pivot, zero rows at the bottom), every nonzero row is primitive
    with a positive pivot entry, and ``rows[i][pivots[i]]`` scales row ``i`` to
    the unit-pivot reduced row echelon form.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = -1
        for i in range(r, m):
            if rows[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        if pr[c] < 0:
            for j in range(n):
                pr[j] = -pr[j]
        a = pr[c]
        for i in range(m):
            if i == r:
                continue
            ri = rows[i]
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
        _make_primitive(rows[i])
    return rows, pivots

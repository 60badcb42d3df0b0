"""Exact rational linear algebra on dense matrices.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here
reduces to fraction-free integer elimination; that hot loop lives in the
compiled extension ``equicohom._rowred`` when available and in
``equicohom._rowred_py`` otherwise.  Set ``EQUICOHOM_PURE=1`` to force the
pure Python kernel (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm

if os.environ.get("EQUICOHOM_PURE"):
    from . import _rowred_py as _rowred
else:
    try:
        from . import _rowred  # type: ignore[attr-defined]
    except ImportError:
        from . import _rowred_py as _rowred

IMPLEMENTATION = _rowred.IMPLEMENTATION

Vector = list[Fraction]
Matrix = list[Vector]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _integer_rows(mat: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; row space is unchanged."""
    out = []
    for row in mat:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def rref(mat: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form with unit pivots.

    Returns only the nonzero rows, plus the pivot column indices (ascending).
    Pivoting always takes the leftmost available column, so with grlex-ordered
    columns the result is the canonical basis the rest of the package expects.
    """
    rows, pivots = _rowred.fraction_free_rref(_integer_rows(mat))
    reduced = []
    for i, c in enumerate(pivots):
        piv = rows[i][c]
        reduced.append([Fraction(x, piv) for x in rows[i]])
    return reduced, pivots


def rank(mat: Matrix) -> int:
    if not mat or not mat[0]:
        return 0
    _, pivots = rref(mat)
    return len(pivots)


def nullspace(mat: Matrix, ncols: int) -> Matrix:
    """Canonical basis (RREF rows) of the right kernel of ``mat``.

    ``ncols`` must be passed explicitly so that empty matrices (no constraints)
    still know their ambient dimension.
    """
    if ncols == 0:
        return []
    reduced: Matrix = []
    pivots: list[int] = []
    if mat:
        reduced, pivots = rref(mat)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [_ZERO] * ncols
        v[f] = _ONE
        for i, c in enumerate(pivots):
            v[c] = -reduced[i][f]
        basis.append(v)
    if not basis:
        return []
    canonical, _ = rref(basis)
    return canonical


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product a·b, shapes (m×k)·(k×n)."""
    if not a:
        return []
    k = len(a[0])
    n = len(b[0]) if b else 0
    assert len(b) == k, "shape mismatch"
    out = []
    for row in a:
        acc = [_ZERO] * n
        for i, x in enumerate(row):
            if x:
                bi = b[i]
                for j in range(n):
                    if bi[j]:
                        acc[j] += x * bi[j]
        out.append(acc)
    return out


def mat_vec(a: Matrix, v: Vector) -> Vector:
    return [sum((x * y for x, y in zip(row, v) if x and y), _ZERO) for row in a]


class SpanTracker:
    """Incrementally maintained RREF basis of a growing subspace.

    Rows are kept fully reduced (zeros above and below every pivot) and sorted
    by pivot column, so :meth:`basis` is the canonical basis of the span and is
    independent of insertion order.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[Vector] = []
        self._pivots: list[int] = []

    def _reduce(self, v: Vector) -> Vector:
        v = list(v)
        for pc, row in zip(self._pivots, self._rows):
            coef = v[pc]
            if coef:
                for j in range(self.ncols):
                    if row[j]:
                        v[j] -= coef * row[j]
        return v

    def add(self, v: Vector) -> bool:
        """Add ``v`` to the span; returns True if the dimension grew."""
        v = self._reduce(v)
        lead = next((j for j, x in enumerate(v) if x), None)
        if lead is None:
            return False
        inv = v[lead]
        v = [x / inv for x in v]
        for row in self._rows:
            coef = row[lead]
            if coef:
                for j in range(self.ncols):
                    if v[j]:
                        row[j] -= coef * v[j]
        at = next((i for i, pc in enumerate(self._pivots) if pc > lead), len(self._pivots))
        self._rows.insert(at, v)
        self._pivots.insert(at, lead)
        return True

    def contains(self, v: Vector) -> bool:
        return all(x == 0 for x in self._reduce(v))

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self) -> Matrix:
        return [list(row) for row in self._rows]

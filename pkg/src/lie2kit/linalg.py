"""Exact rational linear algebra.

Matrices are numpy object arrays holding ``Fraction`` (or ``int``) entries, so
``@`` and ``np.tensordot`` stay exact.  Elimination works on sparse rows
(``dict`` column -> Fraction), which keeps the larger cocycle systems cheap.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def Q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, float):
        raise TypeError("refusing to convert a float to an exact scalar; pass a string or Fraction")
    # gmpy2.mpq and friends
    return Fraction(int(x.numerator), int(x.denominator))


def qarray(data) -> np.ndarray:
    arr = np.array(data, dtype=object)
    flat = arr.reshape(-1)
    for i, v in enumerate(flat):
        flat[i] = Q(v)
    return arr


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_zero(arr, tol: float | None = None) -> bool:
    a = np.asarray(arr)
    if tol is None:
        return all(v == 0 for v in a.reshape(-1))
    return all(abs(v) <= tol for v in a.reshape(-1))


def max_abs(arr):
    a = np.asarray(arr).reshape(-1)
    if a.size == 0:
        return Fraction(0)
    return max(abs(v) for v in a)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def to_rows(matrix) -> list[dict[int, Fraction]]:
    m = np.asarray(matrix, dtype=object)
    rows = []
    for r in m:
        rows.append({j: Q(v) for j, v in enumerate(r) if v != 0})
    return rows


class Echelon:
    """Row-echelon accumulator over Q.

    Rows are reduced against the pivots seen so far as they arrive; the
    leading (smallest) column of each surviving row becomes its pivot.
    Solutions are read off by back substitution with every free column set
    to zero, which is the documented tie-break.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self.inconsistent = False

    def _reduce(self, row: dict[int, Fraction]) -> dict[int, Fraction]:
        row = {c: v for c, v in row.items() if v != 0}
        while True:
            hit = [c for c in row if c in self.pivots]
            if not hit:
                return row
            c = min(hit)
            prow = self.pivots[c]
            f = row[c]
            for k, v in prow.items():
                nv = row.get(k, 0) - f * v
                if nv == 0:
                    row.pop(k, None)
                else:
                    row[k] = nv

    def add(self, row: dict[int, Fraction], rhs: Fraction = Fraction(0)) -> bool:
        """Add an equation ``row . x = rhs``; returns True if it raised the rank."""
        r = dict(row)
        if rhs != 0:
            r[self.ncols] = Q(rhs)
        r = self._reduce(r)
        if not r:
            return False
        lead = min(r)
        if lead == self.ncols:
            self.inconsistent = True
            return False
        inv = 1 / r[lead]
        self.pivots[lead] = {k: v * inv for k, v in r.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def solution(self) -> list[Fraction] | None:
        if self.inconsistent:
            return None
        x = [Fraction(0)] * self.ncols
        for p in sorted(self.pivots, reverse=True):
            row = self.pivots[p]
            val = row.get(self.ncols, Fraction(0))
            for k, v in row.items():
                if k != p and k != self.ncols:
                    val -= v * x[k]
            x[p] = val
        return x

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivots]

    def nullspace(self) -> list[list[Fraction]]:
        basis = []
        for f in self.free_columns():
            x = [Fraction(0)] * self.ncols
            x[f] = Fraction(1)
            for p in sorted(self.pivots, reverse=True):
                row = self.pivots[p]
                val = Fraction(0)
                for k, v in row.items():
                    if k != p and k != self.ncols:
                        val -= v * x[k]
                x[p] = val
            basis.append(x)
        return basis


def echelon(rows: Iterable[dict[int, Fraction]], ncols: int, rhs: Sequence | None = None) -> Echelon:
    e = Echelon(ncols)
    for i, row in enumerate(rows):
        e.add(row, rhs[i] if rhs is not None else Fraction(0))
    return e


def solve(matrix, b) -> list[Fraction] | None:
    """Exact solve of ``matrix @ x = b``; free variables are zero, ``None`` if infeasible."""
    m = np.asarray(matrix, dtype=object)
    e = echelon(to_rows(m), m.shape[1], list(b))
    return e.solution()


def rank(matrix) -> int:
    m = np.asarray(matrix, dtype=object)
    if m.size == 0:
        return 0
    return echelon(to_rows(m), m.shape[1]).rank


def nullspace(matrix) -> list[list[Fraction]]:
    m = np.asarray(matrix, dtype=object)
    return echelon(to_rows(m), m.shape[1]).nullspace()


def det(matrix) -> Fraction:
    a = [[Q(v) for v in row] for row in np.asarray(matrix, dtype=object)]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def inverse(matrix) -> np.ndarray:
    m = np.asarray(matrix, dtype=object)
    n = m.shape[0]
    cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        x = solve(m, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return qarray(np.array(cols, dtype=object).T)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=object), np.asarray(b, dtype=object))

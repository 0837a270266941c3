"""Exact integer/rational matrices: rank, determinant and kernel.

Rank is computed by fraction-free (Bareiss) elimination over Python ints, or
by FLINT's ``fmpz_mat`` when python-flint is importable. Both are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

try:
    import flint
except ImportError:  # pragma: no cover - exercised only without python-flint
    flint = None


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination with column skipping."""
    a = [list(r) for r in rows if any(r)]
    if not a:
        return 0
    m, ncols = len(a), len(a[0])
    prev = 1
    k = 0
    for c in range(ncols):
        if k == m:
            break
        piv = next((i for i in range(k, m) if a[i][c]), None)
        if piv is None:
            continue
        a[k], a[piv] = a[piv], a[k]
        pk = a[k]
        p = pk[c]
        for i in range(k + 1, m):
            row = a[i]
            f = row[c]
            if f:
                for j in range(c + 1, ncols):
                    row[j] = (p * row[j] - f * pk[j]) // prev
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = p * row[j] // prev
            row[c] = 0
        prev = p
        k += 1
    return k


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in matrix]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def _integral_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for r in rows:
        if all(isinstance(x, int) for x in r):
            out.append([int(x) for x in r])
            continue
        fr = [Fraction(x) for x in r]
        den = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * den) for x in fr])
    return out


@dataclass
class RationalMatrix:
    """Dense exact matrix; rational rows are scaled to integers on entry (rank-preserving)."""

    rows: int
    cols: int
    entries: list[list[int]]
    # optional (row, col, value) list of the nonzeros; speeds up conversion to FLINT
    nonzeros: list[tuple[int, int, int]] | None = None

    @classmethod
    def from_triplets(cls, rows: int, cols: int, nonzeros: list[tuple[int, int, int]]) -> RationalMatrix:
        entries = [[0] * cols for _ in range(rows)]
        for i, j, x in nonzeros:
            entries[i][j] = x
        return cls(rows, cols, entries, nonzeros)

    def _flint(self):
        if self.nonzeros is None:
            return flint.fmpz_mat(self.entries)
        m = flint.fmpz_mat(self.rows, self.cols)
        for i, j, x in self.nonzeros:
            m[i, j] = x
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> RationalMatrix:
        ints = _integral_rows(rows)
        ncols = cols if cols is not None else (len(ints[0]) if ints else 0)
        return cls(len(ints), ncols, ints)

    def rank(self, method: str = "auto") -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if method == "auto":
            method = "flint" if flint is not None else "bareiss"
        if method == "flint":
            return self._flint().rank()
        if method == "bareiss":
            return bareiss_rank(self.entries)
        raise ValueError(f"unknown rank method {method!r}")

    def kernel_dimension(self, method: str = "auto") -> int:
        return self.cols - self.rank(method)

    def nullspace(self) -> list[list[Fraction]]:
        return nullspace(self.entries, self.cols)

    def apply(self, vec: Sequence) -> list:
        return [sum(a * b for a, b in zip(row, vec)) for row in self.entries]

    def to_triplets(self) -> str:
        """Sparse ``row col value`` lines (0-based) for external checking."""
        lines = [f"{self.rows} {self.cols}"]
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x:
                    lines.append(f"{i} {j} {x}")
        return "\n".join(lines) + "\n"


def rref(rows: Sequence[Sequence], cols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    ncols = cols if cols is not None else (len(a[0]) if a else 0)
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Sequence[Sequence], cols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel over the rationals."""
    ncols = cols if cols is not None else (len(rows[0]) if rows else 0)
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers (sign of first nonzero positive)."""
    fr = [Fraction(x) for x in vec]
    den = lcm(*(x.denominator for x in fr)) if fr else 1
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return [-x for x in ints] if first < 0 else ints


def rank(rows: Sequence[Sequence], method: str = "auto") -> int:
    return RationalMatrix.from_rows(rows).rank(method) if rows else 0

"""Exact integer linear algebra: Smith normal form and cokernels.

Arithmetic uses Python integers, which are arbitrary precision, so the
usual overflow failure mode of fixed-width implementations cannot
occur here; results are exact for any input.

The reduction prefers unit pivots and works on a sparse view first
(boundary matrices of complexes are extremely sparse with entries in
{-1, 0, +1}), falling back to classical gcd pivoting on the small
dense residue.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .errors import DimensionMismatchError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatchError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries"
            )

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionMismatchError("ragged rows")
        return cls(nrows, ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def row_list(self):
        return [list(self.entries[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[self[r, c] for r in range(self.rows)] for c in range(self.cols)]
        ) if self.rows and self.cols else IntMatrix(self.cols, self.rows, ())

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError("inner dimensions differ")
        a, b = self.row_list(), other.row_list()
        out = []
        for r in range(self.rows):
            row = [0] * other.cols
            for k, av in enumerate(a[r]):
                if av:
                    brow = b[k]
                    for c in range(other.cols):
                        row[c] += av * brow[c]
            out.append(row)
        return IntMatrix(self.rows, other.cols, tuple(x for r in out for x in r))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


@dataclass(frozen=True)
class FgAbelianGroup:
    """A finitely generated abelian group: free rank plus torsion factors."""

    free_rank: int
    torsion: tuple  # each >= 2, each dividing the next

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative rank")
        for t in self.torsion:
            if t < 2:
                raise ValueError("torsion factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError("torsion factors must form a divisibility chain")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion


def group_format(G: FgAbelianGroup) -> str:
    """Canonical rendering, e.g. ``Z^2``, ``Z (+) Z/2``, ``0``."""
    parts = []
    if G.free_rank == 1:
        parts.append("Z")
    elif G.free_rank > 1:
        parts.append(f"Z^{G.free_rank}")
    parts.extend(f"Z/{t}" for t in G.torsion)
    return " (+) ".join(parts) if parts else "0"


def _snf_diagonal(M: IntMatrix) -> list:
    """Diagonal invariant factors d1 | d2 | ... | dr of M."""
    # sparse pass: eliminate with +-1 pivots, which never grows entries
    rows = {}
    col_index = {}
    for r in range(M.rows):
        base = r * M.cols
        d = {c: M.entries[base + c] for c in range(M.cols) if M.entries[base + c]}
        if d:
            rows[r] = d
            for c in d:
                col_index.setdefault(c, set()).add(r)
    factors = []

    def kill(r, c):
        col_index[c].discard(r)
        if not col_index[c]:
            del col_index[c]
        del rows[r][c]
        if not rows[r]:
            del rows[r]

    def set_entry(r, c, v):
        old = rows.get(r, {}).get(c, 0)
        if v == 0:
            if old:
                kill(r, c)
            return
        rows.setdefault(r, {})[c] = v
        col_index.setdefault(c, set()).add(r)

    while True:
        pivot = None
        for r in rows:
            for c, v in rows[r].items():
                if v in (1, -1):
                    pivot = (r, c, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pr, pc, pv = pivot
        prow = dict(rows[pr])
        for r in list(col_index.get(pc, ())):
            if r == pr:
                continue
            mult = rows[r][pc] * pv  # row_r -= mult * row_pr (pivot scaled to +-1)
            for c, v in prow.items():
                set_entry(r, c, rows.get(r, {}).get(c, 0) - mult * v)
        # pivot row/column removed entirely; unit factor recorded
        for c in list(prow):
            kill(pr, c)
        factors.append(1)

    # dense residue (tiny in practice)
    live_rows = sorted(rows)
    live_cols = sorted({c for r in live_rows for c in rows[r]})
    if live_rows:
        cmap = {c: i for i, c in enumerate(live_cols)}
        dense = [[0] * len(live_cols) for _ in live_rows]
        for i, r in enumerate(live_rows):
            for c, v in rows[r].items():
                dense[i][cmap[c]] = v
        factors.extend(_snf_dense(dense))

    factors.sort()
    return factors


def _snf_dense(a: list) -> list:
    """Classical Smith reduction by gcd pivoting on a small dense matrix."""
    nr, nc = len(a), len(a[0]) if a else 0
    out = []
    k = 0
    while k < min(nr, nc):
        # smallest-absolute-value nonzero entry in the submatrix
        best = None
        for i in range(k, nr):
            for j in range(k, nc):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[k], a[i] = a[i], a[k]
        for row in a:
            row[k], row[j] = row[j], row[k]
        while True:
            # clear column k
            again = False
            for i in range(k + 1, nr):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    for j in range(k, nc):
                        a[i][j] -= q * a[k][j]
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        again = True
            if again:
                continue
            # clear row k
            for j in range(k + 1, nc):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    for i in range(k, nr):
                        a[i][j] -= q * a[i][k]
                    if a[k][j]:
                        for row in a:
                            row[k], row[j] = row[j], row[k]
                        again = True
            if not again:
                break
        # divisibility: fold in any entry the pivot does not divide
        fixed = True
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                if a[i][j] % a[k][k] != 0:
                    for jj in range(k, nc):
                        a[k][jj] += a[i][jj]
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        out.append(abs(a[k][k]))
        k += 1
    out.sort()
    return out


def smith_normal_form(M: IntMatrix) -> tuple:
    """Invariant factors d1 | d2 | ... | dr with r = rank(M)."""
    return tuple(_snf_diagonal(M))


def rank(M: IntMatrix) -> int:
    return len(smith_normal_form(M))


def cokernel(ambient_rank: int, M: IntMatrix) -> FgAbelianGroup:
    """Z^ambient_rank modulo the column space of M."""
    if M.rows != ambient_rank:
        raise DimensionMismatchError(
            f"matrix has {M.rows} rows; ambient rank is {ambient_rank}"
        )
    factors = smith_normal_form(M)
    return FgAbelianGroup(
        free_rank=ambient_rank - len(factors),
        torsion=tuple(t for t in factors if t > 1),
    )


# --- independent test oracles ------------------------------------------------

def minor_gcd_invariants(M: IntMatrix) -> tuple:
    """Invariant factors via gcd of k x k minors; brute force, small inputs only."""
    n = min(M.rows, M.cols)
    rows = M.row_list()

    def det(sub) -> int:
        if len(sub) == 1:
            return sub[0][0]
        total = 0
        for j in range(len(sub)):
            minor = [r[:j] + r[j + 1:] for r in sub[1:]]
            total += ((-1) ** j) * sub[0][j] * det(minor)
        return total

    gcds = []
    for k in range(1, n + 1):
        g = 0
        for ri in combinations(range(M.rows), k):
            for ci in combinations(range(M.cols), k):
                sub = [[rows[r][c] for c in ci] for r in ri]
                g = gcd(g, det(sub))
        if g == 0:
            break
        gcds.append(g)
    factors = []
    prev = 1
    for g in gcds:
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def rational_rank(M: IntMatrix) -> int:
    """Rank over Q by Gaussian elimination with exact fractions."""
    a = [[Fraction(x) for x in row] for row in M.row_list()]
    nr, nc = M.rows, M.cols
    r = 0
    for c in range(nc):
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(nr):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nr:
            break
    return r

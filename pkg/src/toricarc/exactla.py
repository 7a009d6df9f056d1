"""Small exact integer/rational linear algebra helpers.

Everything here works on plain Python ints and Fractions; numpy object
arrays are accepted wherever a matrix is expected.  Matrices are lists of
rows.
"""

from __future__ import annotations

from fractions import Fraction


def det_bareiss(matrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    m = [[int(x) for x in row] for row in matrix]
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for i in range(size - 1):
        if m[i][i] == 0:
            piv = next((r for r in range(i + 1, size) if m[r][i] != 0), None)
            if piv is None:
                return 0
            m[i], m[piv] = m[piv], m[i]
            sign = -sign
        for r in range(i + 1, size):
            for c in range(i + 1, size):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = m[i][i]
    return sign * m[-1][-1]


def solve_exact(matrix, rhs) -> list[Fraction] | None:
    """Solve a square system exactly over Q; None if singular/inconsistent."""
    size = len(rhs)
    aug = [
        [Fraction(int(x)) for x in row] + [Fraction(int(b))]
        for row, b in zip(matrix, rhs)
    ]
    for col in range(size):
        piv = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        scale = aug[col][col]
        aug[col] = [a / scale for a in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][-1] for r in range(size)]


def invert_unimodular(matrix) -> list[list[int]]:
    """Inverse of an integer matrix with determinant +-1 (integer entries)."""
    size = len(matrix)
    cols = []
    for b in range(size):
        rhs = [1 if r == b else 0 for r in range(size)]
        sol = solve_exact(matrix, rhs)
        if sol is None:
            raise ValueError("matrix is singular")
        col = []
        for val in sol:
            if val.denominator != 1:
                raise ValueError("matrix is not unimodular")
            col.append(int(val))
        cols.append(col)
    return [[cols[c][r] for c in range(size)] for r in range(size)]


def rank_rows(rows) -> int:
    """Rank of a list of integer/rational row vectors (exact elimination)."""
    work = [[Fraction(x) for x in row] for row in rows if any(row)]
    rank = 0
    ncols = len(work[0]) if work else 0
    col = 0
    while rank < len(work) and col < ncols:
        piv = next((r for r in range(rank, len(work)) if work[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        scale = work[rank][col]
        work[rank] = [a / scale for a in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col] != 0:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


class RowSpace:
    """Incremental exact row space with membership testing.

    Rows are reduced against the stored echelon basis as they arrive, so
    ideal-membership and rank queries share one elimination.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, list[Fraction]] = {}

    def _reduce(self, row) -> list[Fraction]:
        work = [Fraction(x) for x in row]
        for col in sorted(self.pivots):
            if work[col] != 0:
                f = work[col]
                base = self.pivots[col]
                work = [a - f * b for a, b in zip(work, base)]
        return work

    def add(self, row) -> bool:
        """Insert a row; returns True if it enlarged the space."""
        work = self._reduce(row)
        lead = next((c for c in range(self.ncols) if work[c] != 0), None)
        if lead is None:
            return False
        scale = work[lead]
        work = [a / scale for a in work]
        for col, base in list(self.pivots.items()):
            if base[lead] != 0:
                f = base[lead]
                self.pivots[col] = [a - f * b for a, b in zip(base, work)]
        self.pivots[lead] = work
        return True

    def contains(self, row) -> bool:
        work = self._reduce(row)
        return all(a == 0 for a in work)

    @property
    def rank(self) -> int:
        return len(self.pivots)

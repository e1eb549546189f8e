"""Exact linear algebra over the rationals.

Vectors and matrix rows are sparse ``dict[int, Fraction]`` maps; zero entries
are never stored.  Everything the fixed-ring computations need (row reduction,
nullspaces, ranks, coordinates in a span) is built on one incremental
reduced-echelon routine.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def sparse(vec: Sequence) -> SparseVec:
    """Sparse copy of a dense sequence."""
    return {i: Fraction(x) for i, x in enumerate(vec) if x}


def dense(vec: SparseVec, n: int) -> List[Fraction]:
    out = [ZERO] * n
    for i, x in vec.items():
        out[i] = x
    return out


def axpy(y: SparseVec, a: Fraction, x: SparseVec) -> None:
    """In place ``y += a * x``."""
    for i, xi in x.items():
        v = y.get(i, ZERO) + a * xi
        if v:
            y[i] = v
        else:
            y.pop(i, None)


class EchelonBasis:
    """Incrementally maintained reduced row echelon form.

    Each stored row has a pivot column holding 1 and zeros in every other
    pivot column.  Optionally each row remembers which combination of the
    inserted vectors produced it, so that coordinates with respect to the
    original spanning list can be recovered.
    """

    def __init__(self, track: bool = False):
        self.rows: Dict[int, SparseVec] = {}
        self._col_rows: Dict[int, set] = {}
        self.track = track
        self.combos: Dict[int, SparseVec] = {}
        self.n_inserted = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _index(self, pivot: int, row: SparseVec) -> None:
        for c in row:
            self._col_rows.setdefault(c, set()).add(pivot)

    def _unindex(self, pivot: int, row: SparseVec) -> None:
        for c in row:
            s = self._col_rows.get(c)
            if s is not None:
                s.discard(pivot)

    def reduce(self, vec: SparseVec, combo: Optional[SparseVec] = None) -> SparseVec:
        r = dict(vec)
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if not a:
                continue
            axpy(r, -a, self.rows[c])
            if combo is not None:
                axpy(combo, -a, self.combos[c])
        return r

    def insert(self, vec: SparseVec) -> Optional[int]:
        """Add a vector; return its new pivot column, or None if dependent."""
        combo = {self.n_inserted: ONE} if self.track else None
        self.n_inserted += 1
        r = self.reduce(vec, combo)
        if not r:
            return None
        p = min(r)
        inv = ONE / r[p]
        if inv != ONE:
            r = {c: x * inv for c, x in r.items()}
            if combo is not None:
                combo = {c: x * inv for c, x in combo.items()}
        for q in list(self._col_rows.get(p, ())):
            row = self.rows[q]
            a = row.get(p)
            if not a:
                continue
            self._unindex(q, row)
            axpy(row, -a, r)
            self._index(q, row)
            if combo is not None:
                axpy(self.combos[q], -a, combo)
        self.rows[p] = r
        self._index(p, r)
        if combo is not None:
            self.combos[p] = combo
        return p

    def contains(self, vec: SparseVec) -> bool:
        return not self.reduce(vec)

    def coordinates(self, vec: SparseVec) -> SparseVec:
        """Coefficients expressing ``vec`` in the inserted vectors.

        Raises ValueError when ``vec`` is outside the span.
        """
        if not self.track:
            raise ValueError("basis was built without combination tracking")
        out: SparseVec = {}
        r = dict(vec)
        for c in [c for c in r if c in self.rows]:
            a = r.get(c)
            if not a:
                continue
            axpy(r, -a, self.rows[c])
            axpy(out, a, self.combos[c])
        if r:
            raise ValueError("vector not in span")
        return out


def row_reduce(rows: Iterable[SparseVec]) -> EchelonBasis:
    eb = EchelonBasis()
    for r in rows:
        if r:
            eb.insert(r)
    return eb


def rank(rows: Iterable[SparseVec]) -> int:
    return row_reduce(rows).rank


def nullspace(rows: Iterable[SparseVec], ncols: int) -> List[SparseVec]:
    """Basis of ``{x : row . x = 0 for every row}`` in canonical echelon form.

    One vector per free column ``f``: it has a 1 at ``f``, zeros at the other
    free columns, and minus the pivot-row entries at the pivots.
    """
    eb = row_reduce(rows)
    pivots = eb.rows
    free = [c for c in range(ncols) if c not in pivots]
    by_free: Dict[int, SparseVec] = {f: {f: ONE} for f in free}
    for p, row in pivots.items():
        for c, x in row.items():
            if c != p:
                by_free[c][p] = -x
    return [by_free[f] for f in free]


def transpose(cols: Dict[int, SparseVec]) -> Dict[int, SparseVec]:
    rows: Dict[int, SparseVec] = {}
    for j, col in cols.items():
        for i, x in col.items():
            rows.setdefault(i, {})[j] = x
    return rows


def solve_square(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Solve ``matrix @ X = rhs`` for dense square ``matrix``; rhs given as columns."""
    n = len(matrix)
    aug = [list(map(Fraction, matrix[i])) + [Fraction(col[i]) for col in rhs] for i in range(n)]
    m = len(rhs)
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = ONE / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [[aug[i][n + j] for i in range(n)] for j in range(m)]


def inverse(matrix: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(matrix)
    eye = [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    cols = solve_square(matrix, eye)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def dense_rank(matrix: Sequence[Sequence]) -> int:
    return rank(sparse(r) for r in matrix)


def pairs(vec: SparseVec) -> List[Tuple[int, Fraction]]:
    return sorted(vec.items())

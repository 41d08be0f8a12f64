"""Per-row cheapest-arc index and the derangement row form.

The sorted row index answers "what is the j-th cheapest arc out of i" in
O(1); the row form pairs a derangement with its per-vertex slack, i.e. how
far each current arc sits above its row minimum.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CostMatrix, Derangement


class SortedRowIndex:
    """order(i, j) = column of the j-th smallest off-diagonal entry of row i.

    Rows have length n-1 (the diagonal is excluded).  Ties break toward the
    smaller column index so results are deterministic.
    """

    __slots__ = ("n", "_order")

    def __init__(self, M: CostMatrix):
        n = M.n
        order = [()]
        for i in range(1, n + 1):
            cols = [c for c in range(1, n + 1) if c != i]
            cols.sort(key=lambda c: (M.d(i, c), c))
            order.append(tuple(cols))
        self.n = n
        self._order = tuple(order)

    def col(self, i: int, j: int) -> int:
        """1-based j: the column of row i's j-th cheapest arc."""
        return self._order[i][j - 1]

    def row(self, i: int) -> tuple[int, ...]:
        return self._order[i]


def build_min_index(M: CostMatrix) -> SortedRowIndex:
    return SortedRowIndex(M)


@dataclass(frozen=True)
class RowForm:
    """Derangement plus diff(a) = (row-a minimum) - d(a, D(a)); always <= 0."""

    D: Derangement
    diff: tuple[int, ...]  # padded; diff[0] unused

    def diff_of(self, a: int) -> int:
        return self.diff[a]


def build_row_form(M: CostMatrix, minidx: SortedRowIndex, D: Derangement) -> RowForm:
    diff = [0]
    for a in range(1, M.n + 1):
        diff.append(M.d(a, minidx.col(a, 1)) - M.d(a, D.image(a)))
    return RowForm(D, tuple(diff))


def arc_to_perm(D: Derangement, a: int, b: int) -> int:
    """Map the cost-matrix arc (a, b) to its permutation arc target D^-1(b).

    Returns a itself exactly when (a, b) is already an arc of D.
    """
    return D.inverse(b)

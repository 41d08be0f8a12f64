"""Reduced-matrix negative cycle search and assignment optimality.

The reduced matrix prices every possible permutation arc against the current
derangement: R(a, b) = d(a, D(b)) - d(a, D(a)).  A cycle improves the
derangement exactly when its R-sum is negative, and a derangement is
assignment-optimal exactly when no negative cycle exists.

The search keeps a table of best-known bounded-value paths and sweeps the
middle vertex j = 1..n, extending each recorded path by one arc at a time,
in place, so improvements cascade within a sweep.  Every new or improved
entry is immediately tested for closure into a cycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .core import (
    INF,
    CostMatrix,
    Cycle,
    Derangement,
    PermSet,
    apply_cycle_set,
    cycle_value,
    derangement_value,
)
from .errors import CorruptTable, PassLimitExceeded


class ReducedMatrix:
    """R(a, b) = d(a, D(b)) - d(a, D(a)); diagonal 0, D^-1 column infinite."""

    __slots__ = ("n", "labels", "_grid")

    def __init__(self, M: CostMatrix, D: Derangement):
        n = M.n
        grid = [(0,) * (n + 1)]
        for a in range(1, n + 1):
            base = M.d(a, D.image(a))
            row = [0]
            for b in range(1, n + 1):
                t = M.d(a, D.image(b))
                row.append(INF if t >= INF else t - base)
            grid.append(tuple(row))
        self.n = n
        self.labels = D.as_tuple()
        self._grid = tuple(grid)

    @classmethod
    def from_grid(cls, rows: Sequence[Sequence[int]],
                  labels: tuple[int, ...] | None = None) -> "ReducedMatrix":
        """Wrap a raw grid (0-based input) as a reduced matrix; for tests/oracles."""
        obj = cls.__new__(cls)
        n = len(rows)
        grid = [(0,) * (n + 1)]
        for row in rows:
            if len(row) != n:
                raise ValueError("grid must be square")
            grid.append((0,) + tuple(int(v) for v in row))
        obj.n = n
        obj.labels = labels if labels is not None else tuple(range(1, n + 1))
        obj._grid = tuple(grid)
        return obj

    def r(self, a: int, b: int) -> int:
        return self._grid[a][b]


def build_reduced(M: CostMatrix, D: Derangement) -> ReducedMatrix:
    return ReducedMatrix(M, D)


def cycle_reduced_sum(R: ReducedMatrix, verts: Sequence[int]) -> int:
    """Sum of R over the closed cycle through verts; INF if any arc is missing."""
    total = 0
    k = len(verts)
    for i in range(k):
        w = R.r(verts[i], verts[(i + 1) % k])
        if w >= INF:
            return INF
        total += w
    return total


@dataclass
class PathEntry:
    value: int
    pred: int | None = None  # vertex immediately preceding the column vertex; None = direct arc
    alts: tuple[int, ...] = ()
    status: str = "initial"  # initial | active | inactive


class PathTable:
    """Best-known path values W(a, b) <= threshold with predecessor records."""

    def __init__(self, R: ReducedMatrix, threshold: int, keep_equal: bool = False):
        self.n = R.n
        self.threshold = threshold
        self.keep_equal = keep_equal
        self.entries: dict[tuple[int, int], PathEntry] = {}
        for a in range(1, R.n + 1):
            for b in range(1, R.n + 1):
                if a == b:
                    continue
                w = R.r(a, b)
                if w < INF and w <= threshold:
                    self.entries[(a, b)] = PathEntry(w)

    def value(self, a: int, b: int) -> int | None:
        e = self.entries.get((a, b))
        return None if e is None else e.value

    def recover(self, a: int, b: int) -> list[int]:
        """Expand predecessors right-to-left into the full vertex sequence a..b."""
        if (a, b) not in self.entries:
            raise KeyError(f"no recorded path ({a},{b})")
        path = [b]
        cur = b
        steps = 0
        while True:
            e = self.entries.get((a, cur))
            if e is None or e.pred is None:
                break
            cur = e.pred
            path.append(cur)
            steps += 1
            if steps > self.n:
                raise CorruptTable(f"predecessor chain for ({a},{b}) exceeds {self.n} steps")
        path.append(a)
        path.reverse()
        return path


def recover_path(T: PathTable, a: int, b: int) -> list[int]:
    return T.recover(a, b)


def _extract_simple_cycle(R: ReducedMatrix, walk: list[int]) -> Cycle | None:
    """A simple cycle with negative R-sum inside a closed walk of negative total.

    Removes non-negative sub-cycles until the remaining closed walk is simple;
    the remainder keeps a negative total, so one always survives.
    """
    verts = list(walk)
    while True:
        pos: dict[int, int] = {}
        dup = None
        for i, v in enumerate(verts):
            if v in pos:
                dup = (pos[v], i)
                break
            pos[v] = i
        if dup is None:
            if len(verts) >= 2 and cycle_reduced_sum(R, verts) < 0:
                return Cycle(tuple(verts))
            return None
        i, j = dup
        inner = verts[i:j]
        if len(inner) >= 2 and cycle_reduced_sum(R, inner) < 0:
            return Cycle(tuple(inner))
        verts = verts[:i] + verts[j:]


def fw_pass(R: ReducedMatrix, T: PathTable,
            collector: Callable[[list[int], int], None] | None = None,
            ) -> tuple[PathTable, bool, Cycle | None]:
    """One full sweep j = 1..n extending recorded paths by single arcs of R.

    Updates are in place, so later j values see earlier improvements within
    the same sweep.  In negative mode (threshold < 0) the first closure into
    a negative cycle returns immediately; with a collector every closure
    whose value lands in [0, threshold] is reported instead.
    """
    n = R.n
    changed = False
    negative_mode = T.threshold < 0
    for j in range(1, n + 1):
        sources = sorted(a for (a, jj) in T.entries if jj == j)
        for a in sources:
            src = T.entries.get((a, j))
            if src is None:
                continue
            extended = False
            w = src.value
            for c in range(1, n + 1):
                if c == a or c == j:
                    continue
                arc = R.r(j, c)
                if arc >= INF:
                    continue
                cand = w + arc
                if cand > T.threshold:
                    continue
                cur = T.entries.get((a, c))
                if cur is not None and cand > cur.value:
                    continue
                if cur is not None and cand == cur.value:
                    if T.keep_equal and j != cur.pred and j not in cur.alts:
                        cur.alts = cur.alts + (j,)
                    continue
                T.entries[(a, c)] = PathEntry(cand, j, (), "active")
                changed = True
                extended = True
                back = R.r(c, a)
                if back >= INF:
                    continue
                closure = cand + back
                if negative_mode and closure < 0:
                    walk = T.recover(a, c)
                    cyc = _extract_simple_cycle(R, walk)
                    if cyc is not None:
                        return T, changed, cyc
                elif collector is not None and 0 <= closure <= T.threshold:
                    collector(T.recover(a, c), closure)
            if src.status != "initial":
                src.status = "active" if extended else "inactive"
    return T, changed, None


def _two_cycle_scan(R: ReducedMatrix, lo: int, hi: int) -> list[tuple[Cycle, int]]:
    """All 2-cycles with value in [lo, hi]."""
    out = []
    for a in range(1, R.n + 1):
        for b in range(a + 1, R.n + 1):
            ab, ba = R.r(a, b), R.r(b, a)
            if ab >= INF or ba >= INF:
                continue
            v = ab + ba
            if lo <= v <= hi:
                out.append((Cycle((a, b)), v))
    return out


def find_negative_cycle(R: ReducedMatrix, keep_equal: bool = False,
                        ) -> tuple[Cycle | None, int, PathTable]:
    """Search R for any negative cycle; returns (cycle or None, passes, table).

    A sweep that changes nothing certifies there is no negative cycle.  More
    than n changing sweeps without a closure is impossible for a sound
    table, so that raises.
    """
    T = PathTable(R, threshold=-1, keep_equal=keep_equal)
    twos = _two_cycle_scan(R, -(10**18), -1)
    if twos:
        twos.sort(key=lambda cv: (cv[1], cv[0].verts))
        return twos[0][0], 0, T
    for pass_no in range(1, R.n + 1):
        T, changed, found = fw_pass(R, T)
        if found is not None:
            return found, pass_no, T
        if not changed:
            return None, pass_no, T
    raise PassLimitExceeded(f"negative-path sweeps still changing after {R.n} passes")


@dataclass
class AppliedCycle:
    cycle: Cycle
    total: int
    value_after: int
    passes: int
    recovered: tuple[int, ...]
    result: Derangement

    def to_dict(self) -> dict:
        return {
            "event": "negative_cycle_apply",
            "cycle": list(self.cycle.verts),
            "total": self.total,
            "value_after": self.value_after,
            "passes": self.passes,
        }


@dataclass
class AssignmentResult:
    derangement: Derangement
    value: int
    applied: list[AppliedCycle] = field(default_factory=list)
    passes: int = 0  # cumulative sweeps, including the certifying ones


def solve_assignment(M: CostMatrix, D: Derangement,
                     keep_equal: bool = False) -> AssignmentResult:
    """Eliminate negative cycles until none exist; the result is AP-optimal."""
    value = derangement_value(M, D)
    res = AssignmentResult(D, value)
    while True:
        R = ReducedMatrix(M, res.derangement)
        found, passes, _table = find_negative_cycle(R, keep_equal)
        res.passes += passes
        if found is None:
            return res
        vc = cycle_value(M, res.derangement, found)
        if vc.total != cycle_reduced_sum(R, found.verts):
            raise AssertionError("reduced cycle sum disagrees with direct valuation")
        if vc.total >= 0:
            raise AssertionError("search returned a non-negative cycle")
        nxt = apply_cycle_set(res.derangement, PermSet((found,)))
        res.value += vc.total
        res.applied.append(AppliedCycle(found, vc.total, res.value, passes,
                                        tuple(found.verts), nxt))
        res.derangement = nxt


def render_reduced(R: ReducedMatrix) -> str:
    """The reduced matrix in table layout: image labels, index row, entries."""
    n = R.n
    width = max(5, max(len(str(R.labels[b - 1])) for b in range(1, n + 1)))

    def cell(v) -> str:
        return ("inf" if v >= INF else str(v)).rjust(width)

    lines = ["     " + "".join(str(R.labels[b - 1]).rjust(width) for b in range(1, n + 1))]
    lines.append("     " + "".join(str(b).rjust(width) for b in range(1, n + 1)))
    for a in range(1, n + 1):
        lines.append(str(a).rjust(4) + " " + "".join(cell(R.r(a, b)) for b in range(1, n + 1)))
    return "\n".join(lines) + "\n"


def render_paths(T: PathTable) -> str:
    """Predecessor table in the same layout; blank cells mean no record."""
    n = T.n
    width = 5
    lines = ["     " + "".join(str(b).rjust(width) for b in range(1, n + 1))]
    for a in range(1, n + 1):
        row = []
        for b in range(1, n + 1):
            e = T.entries.get((a, b))
            if e is None or e.pred is None:
                row.append("".rjust(width))
            else:
                mark = str(e.pred)
                if e.alts:
                    mark += "," + ",".join(str(x) for x in e.alts)
                row.append(mark.rjust(width))
        lines.append(str(a).rjust(4) + " " + "".join(row))
    return "\n".join(lines) + "\n"

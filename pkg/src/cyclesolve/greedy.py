"""Greedy derangement improvement by negatively-valued permutation cycles.

Each step picks the vertex with the most negative row slack, grows a few
trial paths along cheapest-arc choices, turns every path into candidate
cycles (the full simple cycle, every prefix cycle, and a two-cycle split at
the repeated vertex), and applies the most negative candidate.  Steps repeat
until a handful of consecutive start vertices yield nothing.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import (
    CostMatrix,
    Cycle,
    Derangement,
    PermSet,
    ValuedCycle,
    apply_cycle_set,
    cycle_value,
    derangement_value,
)
from .errors import LoopArc
from .rowmin import RowForm, SortedRowIndex, build_row_form


@dataclass(frozen=True)
class GreedyConfig:
    """Trial counts; both default to floor(ln n) + 1."""

    trials_per_vertex: int
    vertices_before_giving_up: int

    def __post_init__(self):
        if self.trials_per_vertex < 1 or self.vertices_before_giving_up < 1:
            raise ValueError("config values must be >= 1")

    @classmethod
    def default(cls, n: int) -> "GreedyConfig":
        k = int(math.log(n)) + 1
        return cls(k, k)


@dataclass
class TrialPath:
    """A grown trial path and the per-arc bookkeeping behind it.

    vertices[i] -> vertices[i+1] is arc i; columns[i] is the sorted-row-index
    column that supplied it and deltas[i] its cost change.  A closed path
    repeats an earlier vertex as its final element; an aborted path stopped
    because its running value went positive.
    """

    start: int
    vertices: list[int]
    columns: list[int]
    deltas: list[int]
    closed: bool
    close_index: int | None
    aborted: bool


@dataclass(frozen=True)
class Candidate:
    """A candidate permutation with its exact value against the derangement."""

    perm: PermSet
    valued: tuple[ValuedCycle, ...]
    total: int

    def key(self):
        return (self.total, len(self.perm.cycles), self.perm.canonical())


def _successor(M: CostMatrix, minidx: SortedRowIndex, D: Derangement,
               x: int) -> tuple[int, int, int]:
    """Next vertex from x via its cheapest admissible arc.

    Scans columns from 1, skipping the single column that collides with x's
    own arc of D.  Returns (next_vertex, column, delta).
    """
    for col in range(1, M.n):
        t = minidx.col(x, col)
        y = D.inverse(t)
        if y == x:
            continue
        return y, col, M.d(x, t) - M.d(x, D.image(x))
    raise AssertionError("every row has an admissible column for n >= 3")


def grow_trial_path(M: CostMatrix, minidx: SortedRowIndex, D: Derangement,
                    start: int, first_column: int, cfg: GreedyConfig,
                    succ_cache: dict | None = None) -> TrialPath | None:
    """Grow one trial path from `start`, or None when the trial is dead.

    The start vertex uses `first_column`, sliding forward past collisions but
    never beyond trials_per_vertex columns.  A non-negative starting delta
    kills the trial (no negative path can begin with it).  Growth stops when
    a vertex repeats (closed) or the running value goes positive (aborted).
    """
    n = M.n
    col = first_column
    y = None
    while col <= cfg.trials_per_vertex:
        t = minidx.col(start, col)
        y = D.inverse(t)
        if y != start:
            break
        col += 1
        y = None
    if y is None:
        return None
    delta = M.d(start, minidx.col(start, col)) - M.d(start, D.image(start))
    if delta >= 0:
        return None
    path = TrialPath(start, [start, y], [col], [delta], False, None, False)
    in_path = {start: 0, y: 1}
    total = delta
    cache = succ_cache if succ_cache is not None else {}
    x = y
    while True:
        nxt = cache.get(x)
        if nxt is None:
            nxt = _successor(M, minidx, D, x)
            cache[x] = nxt
        y, col, delta = nxt
        path.columns.append(col)
        path.deltas.append(delta)
        path.vertices.append(y)
        if y in in_path:
            path.closed = True
            path.close_index = in_path[y]
            return path
        in_path[y] = len(path.vertices) - 1
        total += delta
        if total > 0:
            path.aborted = True
            return path
        if len(path.vertices) > n:
            raise AssertionError("path exceeded n distinct vertices without repeating")
        x = y


def candidates_from_path(M: CostMatrix, D: Derangement,
                         path: TrialPath) -> list[Candidate]:
    """All candidate permutations a trial path supports, each valued exactly.

    Emits the prefix cycles (start .. v_i) for every i, which includes the
    full simple cycle, plus for a closed path with an interior repeat the
    two-cycle split at the repeated vertex and its second cycle alone.
    Candidates whose terminal arc would land on a diagonal entry are dropped.
    """
    simple = path.vertices[:-1] if path.closed else path.vertices
    out: list[Candidate] = []
    seen: set = set()

    def emit(groups: list[tuple[int, ...]]):
        try:
            perm = PermSet(tuple(Cycle(g) for g in groups))
        except ValueError:
            return
        key = perm.canonical()
        if key in seen:
            return
        try:
            valued = tuple(cycle_value(M, D, c) for c in perm.cycles)
        except LoopArc:
            return
        seen.add(key)
        out.append(Candidate(perm, valued, sum(v.total for v in valued)))

    for end in range(1, len(simple)):
        emit([tuple(simple[: end + 1])])
    if path.closed and path.close_index is not None and path.close_index >= 1:
        first = tuple(simple[: path.close_index])
        second = tuple(simple[path.close_index:])
        if len(second) >= 2:
            emit([second])
            if len(first) >= 2:
                emit([first, second])
    return out


@dataclass
class StepRecord:
    start_vertex: int
    perm: PermSet
    valued: tuple[ValuedCycle, ...]
    total: int
    value_before: int
    value_after: int
    candidates_seen: int
    result: Derangement
    vertices_tried: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        return {
            "event": "greedy_apply",
            "start_vertex": self.start_vertex,
            "cycles": [list(c.verts) for c in self.perm.cycles],
            "total": self.total,
            "value_before": self.value_before,
            "value_after": self.value_after,
            "candidates": self.candidates_seen,
        }


def greedy_step(M: CostMatrix, minidx: SortedRowIndex, D: Derangement,
                cfg: GreedyConfig,
                rowform: RowForm | None = None) -> StepRecord | None:
    """One improvement step; None when the step is exhausted.

    Start vertices are visited by ascending slack (ties by index).  All
    candidates across one vertex's trials compete; the most negative wins
    and is applied immediately.  After `vertices_before_giving_up` fruitless
    vertices the step gives up.  Vertices with zero slack cannot begin a
    negative path, so reaching one ends the step early.
    """
    rf = rowform or build_row_form(M, minidx, D)
    order = sorted(range(1, M.n + 1), key=lambda a: (rf.diff_of(a), a))
    failures = 0
    tried: list[int] = []
    for start in order:
        if rf.diff_of(start) >= 0:
            break
        tried.append(start)
        succ_cache: dict = {}
        best: Candidate | None = None
        n_cands = 0
        used_start_cols: set[int] = set()
        for fc in range(1, cfg.trials_per_vertex + 1):
            path = grow_trial_path(M, minidx, D, start, fc, cfg, succ_cache)
            if path is None:
                continue
            if path.columns[0] in used_start_cols:
                continue
            used_start_cols.add(path.columns[0])
            for cand in candidates_from_path(M, D, path):
                n_cands += 1
                if cand.total < 0 and (best is None or cand.key() < best.key()):
                    best = cand
        if best is not None:
            value_before = derangement_value(M, D)
            result = apply_cycle_set(D, best.perm)
            return StepRecord(
                start_vertex=start,
                perm=best.perm,
                valued=best.valued,
                total=best.total,
                value_before=value_before,
                value_after=value_before + best.total,
                candidates_seen=n_cands,
                result=result,
                vertices_tried=tuple(tried),
            )
        failures += 1
        if failures >= cfg.vertices_before_giving_up:
            break
    return None


@dataclass
class GreedyResult:
    start: Derangement
    final: Derangement
    initial_value: int
    final_value: int
    steps: list[StepRecord] = field(default_factory=list)


def run_greedy(M: CostMatrix, D0: Derangement | None = None,
               cfg: GreedyConfig | None = None) -> GreedyResult:
    """Apply greedy steps until exhausted; the value chain is strictly decreasing."""
    D = D0 if D0 is not None else Derangement.cyclic(M.n)
    cfg = cfg or GreedyConfig.default(M.n)
    minidx = SortedRowIndex(M)
    initial = derangement_value(M, D)
    result = GreedyResult(D, D, initial, initial)
    while True:
        step = greedy_step(M, minidx, D, cfg)
        if step is None:
            result.final = D
            return result
        D = step.result
        result.steps.append(step)
        result.final_value = step.value_after

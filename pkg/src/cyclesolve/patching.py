"""Turning an assignment-optimal cycle cover into a tour.

After the assignment phase the reduced matrix has no negative cycle, so any
tour costs at least as much as the cover.  The gap is bridged by collecting
every cycle of bounded non-negative value and searching for a vertex-disjoint
subset whose application merges the cover into a single n-cycle.  Budgets
grow one unit at a time, so the first success is the exact minimum and the
result is certifiably optimal whenever every search ran to completion.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    INF,
    CostMatrix,
    Cycle,
    Derangement,
    PermSet,
    apply_cycle_set,
    derangement_value,
    is_tour,
)
from .errors import NoTourFound
from .negcycle import PathTable, ReducedMatrix, _two_cycle_scan, cycle_reduced_sum, fw_pass

CERTIFIED = "certified_optimal"
HEURISTIC = "heuristic"

DEFAULT_ENUM_CAP = 5_000_000
DEFAULT_SUBSET_CAP = 1_000_000


@dataclass(frozen=True)
class BoundSchedule:
    """Mean row value m and the budget cap used when no tour is known."""

    m: int
    cap: int

    @classmethod
    def for_matrix(cls, R: ReducedMatrix, cap_mult: int = 3) -> "BoundSchedule":
        total = 0
        count = 0
        for a in range(1, R.n + 1):
            for b in range(1, R.n + 1):
                w = R.r(a, b)
                if w < INF:
                    total += w
                    count += 1
        m = max(1, (total + count // 2) // count)
        return cls(m, cap_mult * m)


@dataclass(frozen=True)
class PatchResult:
    tour: Derangement
    added_value: int
    cycles_used: PermSet
    exactness: str
    budgets: tuple[int, ...] = ()


def _collect_bounded(R: ReducedMatrix, budget: int,
                     node_cap: int | None) -> tuple[list[tuple[Cycle, int]], bool]:
    """(cycles with value in [0, budget], complete?).

    Two routes feed the result: the bounded-path sweep machinery, whose
    closures are harvested, and an exhaustive depth-first enumeration that
    prunes partial paths once their running value exceeds the budget.  Any
    qualifying cycle has a rotation whose every prefix stays within budget,
    so starting the enumeration from every vertex keeps it complete.
    """
    n = R.n
    found: dict[tuple[int, ...], int] = {}

    def add(verts, value):
        cyc = Cycle(tuple(verts)).canonical()
        if cyc.verts not in found:
            found[cyc.verts] = value

    for cyc, v in _two_cycle_scan(R, 0, budget):
        add(cyc.verts, v)

    def harvest(walk: list[int], _value: int):
        # Recorded closure values can be stale after later improvements, so
        # the cycle is re-priced exactly before being kept.
        if len(set(walk)) == len(walk):
            v = cycle_reduced_sum(R, walk)
            if 0 <= v <= budget:
                add(walk, v)

    table = PathTable(R, threshold=budget)
    for _ in range(n):
        table, changed, _ = fw_pass(R, table, collector=harvest)
        if not changed:
            break

    complete = True
    nodes = 0
    path: list[int] = []
    in_path: set[int] = set()

    def dfs(start: int, x: int, psum: int):
        nonlocal nodes, complete
        if not complete:
            return
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            complete = False
            return
        for y in range(1, n + 1):
            if y == start or y in in_path:
                continue
            w = R.r(x, y)
            if w >= INF:
                continue
            ns = psum + w
            if ns > budget:
                continue
            back = R.r(y, start)
            if back < INF and 0 <= ns + back <= budget:
                add(path + [y], ns + back)
            path.append(y)
            in_path.add(y)
            dfs(start, y, ns)
            in_path.discard(y)
            path.pop()

    for start in range(1, n + 1):
        path = [start]
        in_path = {start}
        dfs(start, start, 0)
        if not complete:
            break

    out = [(Cycle(v), val) for v, val in found.items()]
    out.sort(key=lambda cv: (cv[1], len(cv[0].verts), cv[0].verts))
    return out, complete


def collect_bounded_cycles(R: ReducedMatrix, budget: int) -> list[tuple[Cycle, int]]:
    """Every cycle of R with value in [0, budget], canonicalized and sorted."""
    cycles, complete = _collect_bounded(R, budget, None)
    assert complete
    return cycles


def _patch(sigma: Derangement, cycles: list[tuple[Cycle, int]], budget: int,
           node_cap: int | None) -> tuple[tuple[int, tuple[Cycle, ...]] | None, bool]:
    """Minimum-value disjoint subset turning sigma into a tour; (found, complete)."""
    if is_tour(sigma):
        return (0, ()), True
    ordered = sorted(cycles, key=lambda cv: (cv[1], len(cv[0].verts), cv[0].verts))
    best: tuple[int, tuple[Cycle, ...]] | None = None
    nodes = 0
    complete = True

    def rec(i: int, occupied: frozenset, acc: int, chosen: tuple[Cycle, ...]):
        nonlocal best, nodes, complete
        if not complete or i == len(ordered):
            return
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            complete = False
            return
        if best is not None and acc >= best[0]:
            return
        cyc, val = ordered[i]
        if acc + val <= budget and not occupied.intersection(cyc.verts):
            if best is None or acc + val < best[0]:
                nxt = chosen + (cyc,)
                candidate = apply_cycle_set(sigma, PermSet(nxt))
                if is_tour(candidate):
                    best = (acc + val, nxt)
                else:
                    rec(i + 1, occupied | frozenset(cyc.verts), acc + val, nxt)
        rec(i + 1, occupied, acc, chosen)

    rec(0, frozenset(), 0, ())
    return best, complete


def patch_to_tour(sigma: Derangement, cycles: list[tuple[Cycle, int]],
                  budget: int) -> PatchResult | None:
    """Best disjoint patch within budget, or None when no subset yields a tour."""
    found, complete = _patch(sigma, cycles, budget, DEFAULT_SUBSET_CAP)
    if found is None:
        return None
    value, chosen = found
    perm = PermSet(chosen)
    tour = apply_cycle_set(sigma, perm) if chosen else sigma
    return PatchResult(tour, value, perm, CERTIFIED if complete else HEURISTIC)


def complete_tour(M: CostMatrix, sigma: Derangement,
                  best_tour: Derangement | None = None, *,
                  cap_mult: int = 3,
                  enum_cap: int | None = DEFAULT_ENUM_CAP,
                  subset_cap: int | None = DEFAULT_SUBSET_CAP) -> PatchResult:
    """Produce the cheapest tour reachable from the assignment optimum.

    Budgets run 0, 1, 2, ...; the first complete success is the global tour
    optimum because every smaller budget was searched exhaustively.  When a
    tour is already known, budgets stop as soon as beating it becomes
    impossible and the known tour is returned, certified if every search was
    complete.  Without a known tour the cap (a multiple of the mean reduced
    row value) bounds the escalation.
    """
    ap_value = derangement_value(M, sigma)
    if is_tour(sigma):
        return PatchResult(sigma, 0, PermSet(()), CERTIFIED)
    R = ReducedMatrix(M, sigma)
    schedule = BoundSchedule.for_matrix(R, cap_mult)
    best_seen = derangement_value(M, best_tour) if best_tour is not None else None
    target = best_seen - ap_value - 1 if best_seen is not None else None
    if target is not None and target < 0:
        return PatchResult(best_tour, best_seen - ap_value, PermSet(()), CERTIFIED)

    budgets: list[int] = []
    all_complete = True
    b = 0
    while True:
        if target is not None and b > target:
            exactness = CERTIFIED if all_complete else HEURISTIC
            return PatchResult(best_tour, best_seen - ap_value, PermSet(()),
                               exactness, tuple(budgets))
        if target is None and b > schedule.cap:
            raise NoTourFound(schedule.cap)
        budgets.append(b)
        cycles, c_ok = _collect_bounded(R, b, enum_cap)
        found, p_ok = _patch(sigma, cycles, b, subset_cap)
        all_complete = all_complete and c_ok and p_ok
        if found is not None:
            value, chosen = found
            perm = PermSet(chosen)
            tour = apply_cycle_set(sigma, perm) if chosen else sigma
            exactness = CERTIFIED if all_complete else HEURISTIC
            result = PatchResult(tour, value, perm, exactness, tuple(budgets))
            if best_seen is not None and best_seen <= ap_value + value:
                return replace(result, tour=best_tour, added_value=best_seen - ap_value,
                               cycles_used=PermSet(()))
            return result
        b += 1

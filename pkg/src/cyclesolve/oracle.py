"""Independent exact baselines used to cross-check the solver.

Nothing here shares code with the solver proper: the assignment optimum
comes from scipy's linear_sum_assignment, the tour optimum from a bitmask
dynamic program, and negative cycles from plain relaxation.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import INF, CostMatrix, Cycle, Derangement
from .errors import Infeasible, TooLarge

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

HELD_KARP_CAP = 22

_BIG = np.int64(2**60)


def hungarian_ap(M: CostMatrix) -> tuple[int, Derangement]:
    """Optimal assignment value and one optimal derangement."""
    from scipy.optimize import linear_sum_assignment

    n = M.n
    cost = np.full((n, n), np.inf)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                cost[i - 1, j - 1] = M.d(i, j)
    try:
        rows, cols = linear_sum_assignment(cost)
    except ValueError as e:
        raise Infeasible(str(e)) from None
    total = cost[rows, cols].sum()
    if not np.isfinite(total):
        raise Infeasible("no finite assignment exists")
    image = [0] * n
    for r, c in zip(rows, cols):
        image[r] = c + 1
    return int(round(total)), Derangement(image)


def _held_karp_python(d: np.ndarray) -> tuple[int, list[int]]:
    n = d.shape[0]
    m = n - 1
    full = (1 << m) - 1
    dp = [[_BIG] * m for _ in range(1 << m)]
    parent = [[-1] * m for _ in range(1 << m)]
    for j in range(m):
        dp[1 << j][j] = int(d[0][j + 1])
    for mask in range(1, full + 1):
        row = dp[mask]
        for last in range(m):
            if not mask & (1 << last) or row[last] >= _BIG:
                continue
            base = row[last]
            for nxt in range(m):
                if mask & (1 << nxt):
                    continue
                nmask = mask | (1 << nxt)
                cand = base + int(d[last + 1][nxt + 1])
                if cand < dp[nmask][nxt]:
                    dp[nmask][nxt] = cand
                    parent[nmask][nxt] = last
    best, best_last = _BIG, -1
    for last in range(m):
        cand = dp[full][last] + int(d[last + 1][0])
        if cand < best:
            best, best_last = cand, last
    order = []
    mask, last = full, best_last
    while last != -1:
        order.append(last + 1)
        prev = parent[mask][last]
        mask ^= 1 << last
        last = prev
    order.append(0)
    order.reverse()
    return int(best), order


if njit is not None:

    @njit(cache=True)
    def _held_karp_numba(d):  # pragma: no cover - exercised via held_karp_tsp
        n = d.shape[0]
        m = n - 1
        full = (1 << m) - 1
        big = np.int64(2**60)
        dp = np.full((full + 1, m), big, dtype=np.int64)
        parent = np.full((full + 1, m), -1, dtype=np.int16)
        for j in range(m):
            dp[1 << j, j] = d[0, j + 1]
        for mask in range(1, full + 1):
            for last in range(m):
                if not mask & (1 << last):
                    continue
                base = dp[mask, last]
                if base >= big:
                    continue
                for nxt in range(m):
                    if mask & (1 << nxt):
                        continue
                    nmask = mask | (1 << nxt)
                    cand = base + d[last + 1, nxt + 1]
                    if cand < dp[nmask, nxt]:
                        dp[nmask, nxt] = cand
                        parent[nmask, nxt] = last
        best = big
        best_last = -1
        for last in range(m):
            cand = dp[full, last] + d[last + 1, 0]
            if cand < best:
                best = cand
                best_last = last
        order = np.empty(n, dtype=np.int64)
        pos = n - 1
        mask = full
        last = best_last
        while last != -1:
            order[pos] = last + 1
            pos -= 1
            prev = parent[mask, last]
            mask ^= 1 << last
            last = np.int64(prev)
        order[0] = 0
        return best, order


def held_karp_tsp(M: CostMatrix, cap: int = HELD_KARP_CAP) -> tuple[int, Derangement]:
    """Exact tour optimum by dynamic programming over vertex subsets."""
    n = M.n
    if n > cap:
        raise TooLarge(f"n={n} exceeds the Held-Karp cap {cap}")
    d = np.array(M.to_lists(), dtype=np.int64)
    d[d >= INF] = _BIG
    if njit is not None:
        best, order = _held_karp_numba(d)
        order = [int(v) for v in order]
    else:
        best, order = _held_karp_python(d)
    image = [0] * n
    for k in range(n):
        image[order[k]] = order[(k + 1) % n] + 1
    return int(best), Derangement(image)


def bellman_negative_cycle(R) -> bool:
    """True iff the reduced matrix contains a negative directed cycle.

    Standard relaxation from a virtual source connected to every vertex at
    cost 0; an improvement on pass n proves a negative cycle.
    """
    n = R.n
    dist = [0] * (n + 1)
    for _ in range(n - 1):
        changed = False
        for a in range(1, n + 1):
            da = dist[a]
            for b in range(1, n + 1):
                w = R.r(a, b)
                if a == b or w >= INF:
                    continue
                if da + w < dist[b]:
                    dist[b] = da + w
                    changed = True
        if not changed:
            return False
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            w = R.r(a, b)
            if a == b or w >= INF:
                continue
            if dist[a] + w < dist[b]:
                return True
    return False


def brute_cycles(R, budget: int, max_len: int) -> list[tuple[Cycle, int]]:
    """Every simple directed cycle of length <= max_len with value <= budget.

    Exhaustive by construction: enumerates vertex subsets and all cyclic
    orders.  Guarded to desk scale.
    """
    n = R.n
    if n > 10 and max_len > 6:
        raise TooLarge("brute enumeration guard: need n <= 10 or max_len <= 6")
    out = []
    verts = range(1, n + 1)
    for length in range(2, min(max_len, n) + 1):
        for combo in itertools.combinations(verts, length):
            first = combo[0]
            for rest in itertools.permutations(combo[1:]):
                cyc = (first,) + rest
                total = 0
                ok = True
                for i in range(length):
                    w = R.r(cyc[i], cyc[(i + 1) % length])
                    if w >= INF:
                        ok = False
                        break
                    total += w
                if ok and total <= budget:
                    out.append((Cycle(cyc), total))
    out.sort(key=lambda cv: (cv[1], len(cv[0].verts), cv[0].verts))
    return out


def enumerate_derangements(n: int):
    """All derangements of {1..n}; factorial, for tiny cross-checks only."""
    for perm in itertools.permutations(range(1, n + 1)):
        if all(perm[i] != i + 1 for i in range(n)):
            yield Derangement(perm)

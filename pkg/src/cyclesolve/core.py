"""Integer cost matrices, derangements, and valued permutation cycles.

All vertex indices are 1-based, matching the tabular conventions used in
instance files and traces.  Every type here is immutable after construction,
so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import LoopArc, NotDerangement

#: Sentinel for a missing arc (the diagonal).  Construction enforces that any
#: sum of n finite entries stays far below this, so saturating arithmetic
#: never wraps a real value past it.
INF = 10**15


def sat_add(a: int, b: int) -> int:
    """Add two costs, saturating at INF."""
    if a >= INF or b >= INF:
        return INF
    return a + b


class CostMatrix:
    """Square table of arc costs d(i, j) with an infinite diagonal."""

    __slots__ = ("n", "_grid")

    def __init__(self, rows: Sequence[Sequence[int]]):
        n = len(rows)
        if n < 2:
            raise ValueError("cost matrix needs at least 2 vertices")
        max_abs = 1
        grid = [(0,) * (n + 1)]
        for i, row in enumerate(rows, start=1):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            padded = [0]
            for j, v in enumerate(row, start=1):
                v = int(v)
                if i == j:
                    if v < INF:
                        raise ValueError(f"diagonal entry ({i},{j}) must be infinite")
                    v = INF
                else:
                    if v >= INF:
                        raise ValueError(f"off-diagonal entry ({i},{j}) must be finite")
                    max_abs = max(max_abs, abs(v))
                padded.append(v)
            grid.append(tuple(padded))
        if n * max_abs >= INF // 2:
            raise ValueError("entries too large: n * max|entry| must stay below the sentinel")
        self.n = n
        self._grid = tuple(grid)

    def d(self, a: int, b: int) -> int:
        return self._grid[a][b]

    def row(self, a: int) -> tuple[int, ...]:
        """Row a as an (n+1)-tuple; index 0 is padding."""
        return self._grid[a]

    def to_lists(self) -> list[list[int]]:
        return [list(self._grid[i][1:]) for i in range(1, self.n + 1)]

    def __eq__(self, other) -> bool:
        return isinstance(other, CostMatrix) and self._grid == other._grid

    def __hash__(self) -> int:
        return hash(self._grid)

    def __repr__(self) -> str:
        return f"CostMatrix(n={self.n})"


class Derangement:
    """Fixed-point-free permutation of {1..n} with a cached inverse."""

    __slots__ = ("n", "_img", "_inv")

    def __init__(self, image: Sequence[int]):
        n = len(image)
        img = [0] * (n + 1)
        inv = [0] * (n + 1)
        for a, b in enumerate(image, start=1):
            b = int(b)
            if not 1 <= b <= n:
                raise ValueError(f"image({a}) = {b} out of range 1..{n}")
            if b == a:
                raise NotDerangement(f"fixed point at vertex {a}")
            if inv[b]:
                raise ValueError(f"image is not a bijection: {b} hit twice")
            img[a] = b
            inv[b] = a
        self.n = n
        self._img = tuple(img)
        self._inv = tuple(inv)

    @classmethod
    def cyclic(cls, n: int) -> "Derangement":
        """The n-cycle 1 -> 2 -> ... -> n -> 1."""
        return cls(list(range(2, n + 1)) + [1])

    def image(self, a: int) -> int:
        return self._img[a]

    def inverse(self, b: int) -> int:
        return self._inv[b]

    def as_tuple(self) -> tuple[int, ...]:
        return self._img[1:]

    def cycles(self) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at its smallest vertex."""
        seen = [False] * (self.n + 1)
        out = []
        for a in range(1, self.n + 1):
            if seen[a]:
                continue
            cyc = []
            x = a
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self._img[x]
            out.append(tuple(cyc))
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Derangement) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __repr__(self) -> str:
        return f"Derangement({list(self._img[1:])})"


@dataclass(frozen=True)
class Cycle:
    """Permutation cycle (v1 v2 ... vk): v1 -> v2 -> ... -> vk -> v1."""

    verts: tuple[int, ...]

    def __post_init__(self):
        if len(self.verts) < 2:
            raise ValueError("cycle needs at least 2 vertices")
        if len(set(self.verts)) != len(self.verts):
            raise ValueError(f"cycle vertices must be distinct: {self.verts}")
        object.__setattr__(self, "verts", tuple(int(v) for v in self.verts))

    def __len__(self) -> int:
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)

    def canonical(self) -> "Cycle":
        """Rotate so the smallest vertex comes first."""
        i = self.verts.index(min(self.verts))
        return Cycle(self.verts[i:] + self.verts[:i])

    def arcs(self) -> list[tuple[int, int]]:
        vs = self.verts
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __str__(self) -> str:
        return "(" + " ".join(str(v) for v in self.verts) + ")"


@dataclass(frozen=True)
class PermSet:
    """A permutation given as vertex-disjoint cycles; identity off-support."""

    cycles: tuple[Cycle, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for c in self.cycles:
            overlap = seen.intersection(c.verts)
            if overlap:
                raise ValueError(f"cycles share vertices {sorted(overlap)}")
            seen.update(c.verts)
        object.__setattr__(self, "cycles", tuple(self.cycles))

    @classmethod
    def of(cls, *vert_groups: Iterable[int]) -> "PermSet":
        return cls(tuple(Cycle(tuple(g)) for g in vert_groups))

    def mapping(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.cycles:
            for a, b in c.arcs():
                out[a] = b
        return out

    def vertices(self) -> set[int]:
        return {v for c in self.cycles for v in c.verts}

    def canonical(self) -> tuple[tuple[int, ...], ...]:
        return tuple(sorted(c.canonical().verts for c in self.cycles))

    def __len__(self) -> int:
        return len(self.cycles)

    def __str__(self) -> str:
        return "".join(str(c) for c in self.cycles) if self.cycles else "()"


@dataclass(frozen=True)
class ValuedCycle:
    """A cycle with the per-vertex cost deltas it causes on a derangement.

    deltas[i] = d(v_i, D(s(v_i))) - d(v_i, D(v_i)) for v_i = cycle.verts[i].
    """

    cycle: Cycle
    deltas: tuple[int, ...]
    total: int

    def __post_init__(self):
        if len(self.deltas) != len(self.cycle.verts):
            raise ValueError("one delta per cycle vertex required")
        if sum(self.deltas) != self.total:
            raise ValueError("total must equal the sum of deltas")


def derangement_value(M: CostMatrix, D: Derangement) -> int:
    """Total cost of the arcs (a, D(a))."""
    if D.n != M.n:
        raise ValueError("dimension mismatch")
    return sum(M.d(a, D.image(a)) for a in range(1, M.n + 1))


def cycle_value(M: CostMatrix, D: Derangement, s: Cycle) -> ValuedCycle:
    """Value the cycle s against derangement D.

    Raises LoopArc when some arc of s would land a vertex on its own
    diagonal entry, i.e. applying s would break the derangement property.
    """
    deltas = []
    for a, b in s.arcs():
        target = D.image(b)
        if target == a:
            raise LoopArc(f"arc ({a},{b}) maps onto the loop ({a},{a})")
        deltas.append(M.d(a, target) - M.d(a, D.image(a)))
    return ValuedCycle(s, tuple(deltas), sum(deltas))


def permset_value(M: CostMatrix, D: Derangement, s: PermSet) -> tuple[list[ValuedCycle], int]:
    """Value every cycle of s; raises LoopArc if any arc is a loop."""
    valued = [cycle_value(M, D, c) for c in s.cycles]
    return valued, sum(v.total for v in valued)


def apply_cycle_set(D: Derangement, s: PermSet) -> Derangement:
    """Compose: D'(a) = D(s(a)).  Raises NotDerangement on a fixed point."""
    m = s.mapping()
    image = [D.image(m.get(a, a)) for a in range(1, D.n + 1)]
    try:
        return Derangement(image)
    except NotDerangement as e:
        raise NotDerangement(f"applying {s} breaks the derangement: {e}") from None


def is_tour(D: Derangement) -> bool:
    """True iff D is a single n-cycle."""
    count = 1
    x = D.image(1)
    while x != 1:
        count += 1
        x = D.image(x)
    return count == D.n

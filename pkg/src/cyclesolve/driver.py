"""End-to-end pipeline: greedy descent, assignment optimality, tour patching.

The driver owns cross-phase bookkeeping: it tracks the best tour seen among
every intermediate derangement (starts included, since starting n-cycles are
tours) and hands it to the patching phase, and it assembles a deterministic
report whose serialized form is byte-stable for a given instance, flags and
seed.  Wall-clock timings are collected but excluded from serialization
unless explicitly requested.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field

from .core import CostMatrix, Derangement, derangement_value, is_tour
from .greedy import GreedyConfig, run_greedy
from .instances import digest
from .negcycle import solve_assignment
from .patching import complete_tour

PHASE_CHOICES = ("1", "12", "123")


@dataclass
class SolveReport:
    n: int
    digest: str
    phases: str
    seed: int
    restarts: int
    initial_value: int
    phase1_steps: list[dict] = field(default_factory=list)
    phase1_final: int | None = None
    phase2_cycles: list[dict] = field(default_factory=list)
    phase2_final: int | None = None
    phase2_passes: int | None = None
    ap_value: int | None = None
    tour_value: int | None = None
    tour: tuple[int, ...] | None = None
    added_value: int | None = None
    exactness: str | None = None
    budgets: tuple[int, ...] = ()
    best_tour_seen: int | None = None
    timings: dict[str, float] = field(default_factory=dict)
    events: list[dict] = field(default_factory=list)

    def to_dict(self, include_timings: bool = False) -> dict:
        out = {
            "n": self.n,
            "digest": self.digest,
            "phases": self.phases,
            "seed": self.seed,
            "restarts": self.restarts,
            "initial_value": self.initial_value,
            "phase1": {"steps": self.phase1_steps, "final_value": self.phase1_final},
            "phase2": {
                "cycles": self.phase2_cycles,
                "final_value": self.phase2_final,
                "passes": self.phase2_passes,
            },
            "phase3": {
                "tour_value": self.tour_value,
                "added_value": self.added_value,
                "exactness": self.exactness,
                "budgets": list(self.budgets),
            },
            "ap_value": self.ap_value,
            "tour_value": self.tour_value,
            "tour": list(self.tour) if self.tour is not None else None,
            "best_tour_seen": self.best_tour_seen,
        }
        if include_timings:
            out["timings"] = {k: round(v, 6) for k, v in sorted(self.timings.items())}
        return out

    def to_json(self, include_timings: bool = False) -> str:
        return json.dumps(self.to_dict(include_timings), sort_keys=True)

    def to_text(self, include_timings: bool = False) -> str:
        lines = [
            f"instance: n={self.n} digest={self.digest}",
            f"flags: phases={self.phases} seed={self.seed} restarts={self.restarts}",
            f"initial_value: {self.initial_value}",
        ]
        for s in self.phase1_steps:
            cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in s["cycles"])
            lines.append(f"phase1 apply: start={s['start_vertex']} {cyc} "
                         f"total={s['total']} value={s['value_after']}")
        lines.append(f"phase1_final: {self.phase1_final}")
        if "2" in self.phases:
            for c in self.phase2_cycles:
                cyc = "(" + " ".join(map(str, c["cycle"])) + ")"
                lines.append(f"phase2 apply: {cyc} total={c['total']} "
                             f"value={c['value_after']}")
            lines.append(f"ap_value: {self.ap_value}")
        if "3" in self.phases:
            lines.append(f"phase3: budgets={list(self.budgets)} "
                         f"added_value={self.added_value} exactness={self.exactness}")
            lines.append(f"tour_value: {self.tour_value}")
            if self.tour is not None:
                lines.append("tour: " + " ".join(map(str, self.tour)))
        lines.append(f"best_tour_seen: {self.best_tour_seen}")
        if include_timings:
            for k, v in sorted(self.timings.items()):
                lines.append(f"time_{k}: {v:.3f}s")
        return "\n".join(lines) + "\n"


def _random_tour(n: int, rng: random.Random) -> Derangement:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    image = [0] * n
    for i, v in enumerate(order):
        image[v - 1] = order[(i + 1) % n]
    return Derangement(image)


def solve_instance(M: CostMatrix, *, phases: str = "123", seed: int = 0,
                   restarts: int = 1, keep_equal: bool = False,
                   budget_cap_mult: int = 3) -> SolveReport:
    if phases not in PHASE_CHOICES:
        raise ValueError(f"phases must be one of {PHASE_CHOICES}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    n = M.n
    rng = random.Random(seed)
    starts = [Derangement.cyclic(n)]
    starts += [_random_tour(n, rng) for _ in range(restarts - 1)]

    report = SolveReport(n=n, digest=digest(M), phases=phases, seed=seed,
                         restarts=restarts,
                         initial_value=derangement_value(M, starts[0]))

    best_tour: Derangement | None = None
    best_tour_value: int | None = None

    def note_tour(D: Derangement):
        nonlocal best_tour, best_tour_value
        if is_tour(D):
            v = derangement_value(M, D)
            if best_tour_value is None or v < best_tour_value:
                best_tour, best_tour_value = D, v

    t0 = time.perf_counter()
    cfg = GreedyConfig.default(n)
    best_result = None
    for D0 in starts:
        note_tour(D0)
        res = run_greedy(M, D0, cfg)
        for step in res.steps:
            note_tour(step.result)
        if best_result is None or res.final_value < best_result.final_value:
            best_result = res
    assert best_result is not None
    report.phase1_steps = [s.to_dict() for s in best_result.steps]
    report.phase1_final = best_result.final_value
    report.events.extend(report.phase1_steps)
    report.timings["phase1"] = time.perf_counter() - t0
    current = best_result.final

    if "2" in phases:
        t0 = time.perf_counter()
        ap = solve_assignment(M, current, keep_equal)
        for rec in ap.applied:
            note_tour(rec.result)
        report.phase2_cycles = [r.to_dict() for r in ap.applied]
        report.phase2_final = ap.value
        report.phase2_passes = ap.passes
        report.ap_value = ap.value
        report.events.extend(report.phase2_cycles)
        report.timings["phase2"] = time.perf_counter() - t0
        current = ap.derangement

    if "3" in phases:
        t0 = time.perf_counter()
        patch = complete_tour(M, current, best_tour, cap_mult=budget_cap_mult)
        report.tour_value = derangement_value(M, patch.tour)
        report.tour = patch.tour.as_tuple()
        report.added_value = patch.added_value
        report.exactness = patch.exactness
        report.budgets = patch.budgets
        report.events.append({
            "event": "patch",
            "budgets": list(patch.budgets),
            "added_value": patch.added_value,
            "cycles": [list(c.verts) for c in patch.cycles_used.cycles],
            "tour_value": report.tour_value,
            "exactness": patch.exactness,
        })
        report.timings["phase3"] = time.perf_counter() - t0

    report.best_tour_seen = best_tour_value
    return report

import random

import pytest

from cyclesolve import (
    Derangement,
    PermSet,
    build_reduced,
    collect_bounded_cycles,
    complete_tour,
    derangement_value,
    is_tour,
    patch_to_tour,
    solve_assignment,
)
from cyclesolve.errors import NoTourFound
from cyclesolve.negcycle import ReducedMatrix
from cyclesolve.oracle import brute_cycles, held_karp_tsp, hungarian_ap
from cyclesolve.patching import BoundSchedule

from conftest import make_instance


class TestCollectBoundedCycles:
    def test_budget_zero_empty_at_optimum(self, ex2, d_apopt_212):
        R = build_reduced(ex2, d_apopt_212)
        assert collect_bounded_cycles(R, 0) == []

    def test_zero_two_cycle_found(self):
        R = ReducedMatrix.from_grid([[0, 0, 9], [0, 0, 9], [9, 9, 0]])
        out = collect_bounded_cycles(R, 0)
        assert [(c.verts, v) for c, v in out] == [((1, 2), 0)]

    def test_matches_brute_on_randoms(self):
        rng = random.Random(555)
        for seed in range(12):
            n = rng.randint(5, 7)
            M = make_instance(n, seed)
            res = solve_assignment(M, Derangement.cyclic(n))
            R = build_reduced(M, res.derangement)
            for budget in (0, 5, 12):
                got = {(c.verts, v) for c, v in collect_bounded_cycles(R, budget)}
                want = {(c.canonical().verts, v) for c, v in brute_cycles(R, budget, n)}
                assert got == want

    def test_monotone_in_budget(self, ex2, d_apopt_212):
        R = build_reduced(ex2, d_apopt_212)
        small = {c.verts for c, _ in collect_bounded_cycles(R, 1)}
        large = {c.verts for c, _ in collect_bounded_cycles(R, 3)}
        assert small <= large

    def test_budget_one_contains_bridge(self, ex2, d_apopt_212):
        # the value-1 cycle whose application restores the 213 tour
        R = build_reduced(ex2, d_apopt_212)
        out = dict((c.verts, v) for c, v in collect_bounded_cycles(R, 1))
        assert (6, 18, 20, 12, 11, 13) in out
        assert out[(6, 18, 20, 12, 11, 13)] == 1


class TestPatchToTour:
    def test_no_cycles_no_patch(self, ex2, d_apopt_212):
        assert patch_to_tour(d_apopt_212, [], 5) is None

    def test_tour_needs_nothing(self, d_tour_213):
        res = patch_to_tour(d_tour_213, [], 0)
        assert res.added_value == 0
        assert res.cycles_used == PermSet(())
        assert res.tour == d_tour_213

    def test_patches_cover_into_tour(self, ex2, d_apopt_212):
        R = build_reduced(ex2, d_apopt_212)
        cycles = collect_bounded_cycles(R, 1)
        res = patch_to_tour(d_apopt_212, cycles, 1)
        assert res is not None
        assert res.added_value == 1
        assert is_tour(res.tour)
        assert derangement_value(ex2, res.tour) == 213

    def test_patch_value_is_tsp_gap(self):
        # assignment optimum decomposes into a 2-cycle plus a 4-cycle here
        M = make_instance(6, 2)
        ap, apd = hungarian_ap(M)
        assert sorted(len(c) for c in apd.cycles()) == [2, 4]
        hk, _ = held_karp_tsp(M)
        R = build_reduced(M, apd)
        cycles = collect_bounded_cycles(R, hk - ap)
        res = patch_to_tour(apd, cycles, hk - ap)
        assert res is not None
        assert res.added_value == hk - ap
        assert derangement_value(M, res.tour) == hk


class TestCompleteTour:
    def test_returns_known_tour_when_budget_zero_fails(self, ex2, d_apopt_212, d_tour_213):
        res = complete_tour(ex2, d_apopt_212, d_tour_213)
        assert res.tour == d_tour_213
        assert res.exactness == "certified_optimal"
        assert res.added_value == 1
        assert res.budgets == (0,)

    def test_tour_input_returned_immediately(self, ex2, d_tour_213):
        res = complete_tour(ex2, d_tour_213, None)
        assert res.tour == d_tour_213
        assert res.added_value == 0
        assert res.exactness == "certified_optimal"

    def test_finds_tour_without_prior(self, ex2, d_apopt_212):
        res = complete_tour(ex2, d_apopt_212, None)
        assert is_tour(res.tour)
        assert derangement_value(ex2, res.tour) == 213
        assert res.exactness == "certified_optimal"
        assert res.budgets == (0, 1)

    def test_certified_matches_exact_oracle(self):
        rng = random.Random(5)
        for seed in range(12):
            n = rng.randint(5, 8)
            M = make_instance(n, seed)
            res2 = solve_assignment(M, Derangement.cyclic(n))
            res3 = complete_tour(M, res2.derangement, None)
            hk, _ = held_karp_tsp(M)
            assert derangement_value(M, res3.tour) >= hk
            if res3.exactness == "certified_optimal":
                assert derangement_value(M, res3.tour) == hk

    def test_budget_cap_exhaustion_raises(self, ex2, d_apopt_212):
        with pytest.raises(NoTourFound):
            # mean row value is positive, so a zero cap multiplier forces
            # budget 0 only, which cannot bridge the gap
            complete_tour(ex2, d_apopt_212, None, cap_mult=0)


class TestBoundSchedule:
    def test_mean_positive(self, ex2, d_apopt_212):
        R = build_reduced(ex2, d_apopt_212)
        sched = BoundSchedule.for_matrix(R, 3)
        assert sched.m >= 1
        assert sched.cap == 3 * sched.m

import json

from cyclesolve import derangement_value, solve_instance
from cyclesolve.oracle import hungarian_ap

from conftest import make_instance


class TestPipeline:
    def test_benchmark_end_to_end(self, ex2):
        r = solve_instance(ex2)
        assert r.initial_value == 1300
        assert r.ap_value == 212
        assert r.tour_value == 213
        assert r.exactness == "certified_optimal"

    def test_value_chain(self, ex2):
        r = solve_instance(ex2)
        value = r.initial_value
        for s in r.phase1_steps:
            assert s["total"] < 0
            assert s["value_before"] == value
            value += s["total"]
            assert s["value_after"] == value
        assert r.phase1_final == value
        for c in r.phase2_cycles:
            assert c["total"] < 0
            value += c["total"]
            assert c["value_after"] == value
        assert r.ap_value == value
        assert r.tour_value == r.ap_value + r.added_value

    def test_phases_1_only(self, ex2):
        r = solve_instance(ex2, phases="1")
        assert r.phase1_final is not None
        assert r.ap_value is None
        assert r.tour_value is None

    def test_phases_12(self, ex2):
        r = solve_instance(ex2, phases="12")
        assert r.ap_value == 212
        assert r.tour_value is None

    def test_ap_matches_oracle_on_randoms(self):
        for seed in range(8):
            M = make_instance(6, seed)
            r = solve_instance(M)
            ap, _ = hungarian_ap(M)
            assert r.ap_value == ap
            assert r.tour_value >= ap
            assert r.best_tour_seen is not None  # starts are tours

    def test_restarts_deterministic_and_not_worse(self, ex2):
        r1 = solve_instance(ex2, seed=3, restarts=4)
        r2 = solve_instance(ex2, seed=3, restarts=4)
        assert r1.to_json() == r2.to_json()
        base = solve_instance(ex2)
        assert r1.phase1_final <= max(base.phase1_final, r1.initial_value)
        assert r1.ap_value == 212 and r1.tour_value == 213

    def test_report_serialization(self, ex2):
        r = solve_instance(ex2)
        data = json.loads(r.to_json())
        assert data["ap_value"] == 212
        assert data["phase3"]["exactness"] == "certified_optimal"
        assert "timings" not in data
        with_t = json.loads(r.to_json(include_timings=True))
        assert set(with_t["timings"]) == {"phase1", "phase2", "phase3"}
        text = r.to_text()
        assert "ap_value: 212" in text
        assert "tour_value: 213" in text

    def test_keep_equal_paths_same_results(self, ex2):
        a = solve_instance(ex2)
        b = solve_instance(ex2, keep_equal=True)
        assert (a.ap_value, a.tour_value) == (b.ap_value, b.tour_value)

    def test_trivial_two_vertices(self):
        M = make_instance(2, 0, max_cost=9)
        r = solve_instance(M)
        assert r.tour_value == M.d(1, 2) + M.d(2, 1)
        assert r.exactness == "certified_optimal"

import random

from cyclesolve import (
    CostMatrix,
    Derangement,
    INF,
    arc_to_perm,
    build_min_index,
    build_row_form,
)

from conftest import make_instance, random_derangement


class TestSortedRowIndex:
    def test_row1_order(self, ex2):
        idx = build_min_index(ex2)
        assert idx.row(1) == (17, 7, 5, 14, 13, 6, 9, 10, 15, 12,
                              11, 8, 16, 20, 3, 18, 19, 2, 4)

    def test_row11_head(self, ex2):
        idx = build_min_index(ex2)
        assert idx.row(11)[:3] == (1, 2, 4)

    def test_n2(self):
        M = CostMatrix([[INF, 5], [3, INF]])
        idx = build_min_index(M)
        assert idx.col(1, 1) == 2
        assert idx.col(2, 1) == 1

    def test_row_lengths_exclude_diagonal(self, ex2):
        idx = build_min_index(ex2)
        for i in range(1, 21):
            assert len(idx.row(i)) == 19
            assert i not in idx.row(i)

    def test_rows_sorted_and_tie_broken(self):
        rng = random.Random(42)
        for seed in range(20):
            M = make_instance(rng.randint(3, 9), seed)
            idx = build_min_index(M)
            for i in range(1, M.n + 1):
                row = idx.row(i)
                keys = [(M.d(i, c), c) for c in row]
                assert keys == sorted(keys)


class TestRowForm:
    def test_diff_on_cyclic(self, ex2, d_cyclic):
        rf = build_row_form(ex2, build_min_index(ex2), d_cyclic)
        assert rf.diff_of(1) == -86
        assert rf.diff_of(15) == 0

    def test_diff_zero_at_row_minimum(self):
        M = CostMatrix([[INF, 1, 9], [1, INF, 9], [1, 9, INF]])
        D = Derangement([2, 3, 1])
        rf = build_row_form(M, build_min_index(M), D)
        assert rf.diff_of(1) == 0  # d(1,2)=1 is the row minimum
        assert rf.diff_of(2) == -8
        assert rf.diff_of(3) == 0

    def test_diff_never_positive(self):
        rng = random.Random(7)
        for seed in range(20):
            n = rng.randint(4, 9)
            M = make_instance(n, seed)
            idx = build_min_index(M)
            D = random_derangement(n, rng)
            rf = build_row_form(M, idx, D)
            assert all(rf.diff_of(a) <= 0 for a in range(1, n + 1))


class TestArcToPerm:
    def test_first_arc(self, d_cyclic):
        assert arc_to_perm(d_cyclic, 1, 17) == 16

    def test_on_later_derangement(self, d_after_second):
        assert arc_to_perm(d_after_second, 11, 1) == 20

    def test_self_arc_signals_collision(self, d_cyclic):
        for a in range(1, 21):
            assert arc_to_perm(d_cyclic, a, d_cyclic.image(a)) == a

    def test_round_trip(self):
        rng = random.Random(11)
        D = random_derangement(9, rng)
        for x in range(1, 10):
            assert arc_to_perm(D, 3, D.image(x)) == x

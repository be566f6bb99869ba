import math
import random
from itertools import groupby

import pytest

from treedisc import (
    BudgetExceeded,
    Colouring,
    colour_tree,
    enumerate_trees,
    exact_discrepancy,
    exact_oriented_discrepancy,
    leaves,
    max_imbalance,
    oriented_imbalance,
    path,
    random_tree,
    spider,
    star,
    star_oriented_discrepancy,
    trees_of_order,
    verify_theorems,
)

FREE_TREE_COUNTS = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47,
                    10: 106, 11: 235, 12: 551}


class TestExactDiscrepancy:
    @pytest.mark.parametrize("r", [2, 3, 4])
    def test_paths(self, r):
        assert exact_discrepancy(path(7), r).value == r - 1

    @pytest.mark.parametrize("ell,r", [(4, 2), (5, 3), (6, 3), (7, 4)])
    def test_stars(self, ell, r):
        assert exact_discrepancy(star(ell), r).value == (r - 1) * math.ceil(ell / r)

    def test_spider_sharpness(self):
        assert exact_discrepancy(spider(3, 3), 3).value == 3

    def test_optimal_assignment_reproduces_value(self):
        rng = random.Random(1)
        for trial in range(15):
            t = random_tree(rng.randint(2, 8), seed=trial + 50)
            r = rng.randint(2, 3)
            res = exact_discrepancy(t, r)
            assert max_imbalance(t, res.optimal).value == res.value

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_discrepancy(random_tree(30, 0), 3)

    def test_pruning_soundness(self):
        # pruned and unpruned searches agree on every tree with m <= 7
        for n in range(2, 9):
            for t in trees_of_order(n):
                for r in (2, 3):
                    a = exact_discrepancy(t, r, prune=True)
                    b = exact_discrepancy(t, r, prune=False)
                    assert a.value == b.value
                    assert a.search_size <= b.search_size

    def test_colour_permutation_invariance(self):
        rng = random.Random(3)
        for trial in range(40):
            t = random_tree(rng.randint(2, 10), seed=trial + 80)
            r = rng.randint(2, 4)
            assign = [rng.randint(1, r) for _ in range(t.m)]
            perm = list(range(1, r + 1))
            rng.shuffle(perm)
            permuted = [perm[a - 1] for a in assign]
            v1 = max_imbalance(t, Colouring(r, tuple(assign))).value
            v2 = max_imbalance(t, Colouring(r, tuple(permuted))).value
            assert v1 == v2

    def test_never_beats_constructive(self):
        for n in range(2, 8):
            for t in trees_of_order(n):
                for r in (2, 3):
                    exact = exact_discrepancy(t, r).value
                    built = max_imbalance(t, colour_tree(t, r)).value
                    assert exact <= built


class TestExactOriented:
    @pytest.mark.parametrize("ell", range(2, 9))
    def test_stars(self, ell):
        res = exact_oriented_discrepancy(star(ell))
        assert res.value == star_oriented_discrepancy(ell)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_paths(self, n):
        assert exact_oriented_discrepancy(path(n)).value == 2

    def test_optimal_orientation_reproduces_value(self):
        rng = random.Random(4)
        for trial in range(10):
            t = random_tree(rng.randint(2, 9), seed=trial)
            res = exact_oriented_discrepancy(t)
            assert oriented_imbalance(t, res.optimal).value == res.value

    def test_search_size_halved(self):
        t = star(6)
        assert exact_oriented_discrepancy(t).search_size == 2 ** 5

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            exact_oriented_discrepancy(random_tree(30, 0))


class TestEnumeration:
    @pytest.mark.parametrize("n,count", sorted(FREE_TREE_COUNTS.items()))
    def test_counts(self, n, count):
        assert len(trees_of_order(n)) == count

    def test_stream_is_grouped_and_valid(self):
        ts = list(enumerate_trees(7))
        assert len(ts) == sum(FREE_TREE_COUNTS[n] for n in range(2, 8))
        sizes = [t.n for t in ts]
        assert sizes == sorted(sizes)
        for n, group in groupby(ts, key=lambda t: t.n):
            group = list(group)
            assert len(group) == FREE_TREE_COUNTS[n]

    def test_n4_is_path_and_star(self):
        reps = trees_of_order(4)
        shapes = {tuple(sorted(t.deg)) for t in reps}
        assert shapes == {(1, 1, 2, 2), (1, 1, 1, 3)}

    def test_range_check(self):
        from treedisc import ParamOutOfRange
        with pytest.raises(ParamOutOfRange):
            list(enumerate_trees(13))


class TestVerifyTheorems:
    def test_small_sweep_clean(self):
        report = verify_theorems(7, (2, 3))
        assert report.rows and not report.violations
        for row in report.rows:
            if row["r"] == 2:
                assert row["exact"] == math.ceil(row["ell"] / 2)

    def test_csv_shape(self):
        report = verify_theorems(5, (2,), oriented=False)
        lines = report.to_csv().strip().splitlines()
        assert lines[0] == "tree_id,n,ell,r,exact,lower,upper"
        assert len(lines) == 1 + len(report.rows)

    def test_workers_do_not_change_output(self):
        a = verify_theorems(6, (2,))
        b = verify_theorems(6, (2,), workers=2)
        assert a.rows == b.rows

    def test_gap_distributions_cover_rows(self):
        report = verify_theorems(6, (2, 3), oriented=False)
        for r in (2, 3):
            assert sum(report.lower_gaps[r].values()) == sum(
                1 for row in report.rows if row["r"] == r)

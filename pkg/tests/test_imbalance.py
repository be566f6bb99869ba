import random

import pytest
from hypothesis import given, strategies as st

from treedisc import (
    BadColour,
    Colouring,
    DisconnectedSubtree,
    LengthMismatch,
    NonFiniteWeight,
    Tree,
    all_profiles,
    colouring_from_text,
    colouring_to_text,
    max_imbalance,
    max_weight_subtree,
    path,
    profile,
    random_tree,
    star,
    symmetric_max_imbalance,
    weight,
)
from bruteforce import (
    brute_max_imbalance,
    brute_profile,
    brute_symmetric_imbalance,
    brute_max_weight_subtree,
)


def random_colouring(m, r, rng):
    return Colouring(r, tuple(rng.randint(1, r) for _ in range(m)))


class TestColouring:
    def test_bad_colour(self):
        with pytest.raises(BadColour):
            Colouring(2, (1, 3))

    def test_r_minimum(self):
        from treedisc import ParamOutOfRange
        with pytest.raises(ParamOutOfRange):
            Colouring(1, (1,))

    def test_text_round_trip(self):
        c = Colouring(3, (1, 3, 2, 2))
        assert colouring_from_text(colouring_to_text(c), r=3) == c


class TestWeight:
    def test_whole_star(self):
        t = star(4)
        c = Colouring(2, (1, 1, 2, 2))
        assert weight(t, c, range(4), 1) == 0

    def test_two_edges_of_one_colour(self):
        t = star(4)
        c = Colouring(2, (1, 1, 2, 2))
        assert weight(t, c, (0, 1), 1) == 2

    def test_empty_set(self):
        t = star(4)
        c = Colouring(2, (1, 1, 2, 2))
        assert weight(t, c, (), 1) == 0

    def test_disconnected_rejected(self):
        t = path(4)
        c = Colouring(2, (1, 2, 1))
        with pytest.raises(DisconnectedSubtree):
            weight(t, c, (0, 2), 1)

    def test_bad_colour(self):
        t = path(3)
        c = Colouring(2, (1, 2))
        with pytest.raises(BadColour):
            weight(t, c, (0,), 3)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            weight(path(4), Colouring(2, (1, 2)), (0,), 1)


class TestProfile:
    def test_balanced_star_centre(self):
        t = star(4)
        c = Colouring(2, (1, 1, 2, 2))
        assert profile(t, c, 0).values == (2, 2)
        assert brute_profile(t, c, 0) == (2, 2)

    def test_path_prefixes(self):
        t = path(4)
        c = Colouring(2, (1, 2, 1))
        assert profile(t, c, 0).values == (1, 0)

    def test_monochromatic(self):
        t = random_tree(9, seed=3)
        r = 4
        c = Colouring(r, tuple([1] * t.m))
        for v in range(t.n):
            p = profile(t, c, v).values
            assert p[0] == (r - 1) * t.m
            assert p[1:] == (0,) * (r - 1)

    def test_matches_brute_force(self):
        rng = random.Random(11)
        for trial in range(25):
            t = random_tree(rng.randint(2, 9), seed=trial + 100)
            c = random_colouring(t.m, rng.randint(2, 4), rng)
            for v in range(t.n):
                assert profile(t, c, v).values == brute_profile(t, c, v)

    def test_all_profiles_matches_single(self):
        rng = random.Random(12)
        for trial in range(25):
            t = random_tree(rng.randint(2, 12), seed=trial + 500)
            c = random_colouring(t.m, rng.randint(2, 5), rng)
            table = all_profiles(t, c)
            for v in range(t.n):
                assert table[v].values == profile(t, c, v).values


class TestMaxImbalance:
    def test_periodic_path(self):
        for r in (2, 3, 4):
            t = path(9)
            c = Colouring(r, tuple(i % r + 1 for i in range(t.m)))
            assert max_imbalance(t, c).value == r - 1

    def test_equipartitioned_star(self):
        t = star(6)
        c = Colouring(3, (1, 1, 2, 2, 3, 3))
        assert max_imbalance(t, c).value == 4

    def test_monochromatic_whole_tree(self):
        t = random_tree(8, seed=5)
        c = Colouring(3, tuple([1] * t.m))
        w = max_imbalance(t, c)
        assert w.value == 2 * t.m
        assert w.edge_ids == tuple(range(t.m))

    def test_matches_brute_force(self):
        rng = random.Random(21)
        for trial in range(40):
            t = random_tree(rng.randint(2, 11), seed=trial + 900)
            c = random_colouring(t.m, rng.randint(2, 4), rng)
            assert max_imbalance(t, c).value == brute_max_imbalance(t, c)

    def test_witness_recomputes(self):
        rng = random.Random(22)
        for trial in range(40):
            t = random_tree(rng.randint(2, 30), seed=trial + 40)
            c = random_colouring(t.m, rng.randint(2, 5), rng)
            w = max_imbalance(t, c)
            assert weight(t, c, w.edge_ids, w.colour) == w.value

    def test_monotone_under_extension(self):
        # adding one pendant edge (any colour) never decreases the maximum
        rng = random.Random(23)
        for trial in range(25):
            t = random_tree(rng.randint(2, 20), seed=trial + 70)
            r = rng.randint(2, 4)
            c = random_colouring(t.m, r, rng)
            base = max_imbalance(t, c).value
            bigger = Tree(list(t.edges) + [(rng.randrange(t.n), t.n)])
            c2 = Colouring(r, c.assignment + (rng.randint(1, r),))
            assert max_imbalance(bigger, c2).value >= base


class TestSymmetric:
    def test_two_colours_coincide(self):
        rng = random.Random(31)
        for trial in range(30):
            t = random_tree(rng.randint(2, 12), seed=trial)
            c = random_colouring(t.m, 2, rng)
            assert (symmetric_max_imbalance(t, c).value
                    == max_imbalance(t, c).value)

    def test_rainbow_star(self):
        t = star(3)
        c = Colouring(3, (1, 2, 3))
        w = symmetric_max_imbalance(t, c)
        assert w.value == 2
        assert brute_symmetric_imbalance(t, c) == 2

    def test_sandwich(self):
        rng = random.Random(32)
        for trial in range(40):
            t = random_tree(rng.randint(2, 12), seed=trial + 1200)
            r = rng.randint(2, 5)
            c = random_colouring(t.m, r, rng)
            up = max_imbalance(t, c).value
            sym = symmetric_max_imbalance(t, c).value
            assert up <= sym <= (r - 1) * up

    def test_matches_brute_force(self):
        rng = random.Random(33)
        for trial in range(30):
            t = random_tree(rng.randint(2, 10), seed=trial + 314)
            c = random_colouring(t.m, rng.randint(2, 4), rng)
            assert (symmetric_max_imbalance(t, c).value
                    == brute_symmetric_imbalance(t, c))

    def test_witness_recomputes_absolutely(self):
        rng = random.Random(34)
        for trial in range(30):
            t = random_tree(rng.randint(2, 20), seed=trial + 27)
            c = random_colouring(t.m, rng.randint(2, 5), rng)
            w = symmetric_max_imbalance(t, c)
            assert abs(weight(t, c, w.edge_ids, w.colour)) == w.value


class TestMaxWeightSubtree:
    def test_all_negative(self):
        value, ids, anchor = max_weight_subtree(path(5), [-1] * 4)
        assert value == 0 and ids == () and anchor == 0

    def test_all_positive(self):
        t = random_tree(9, seed=8)
        value, ids, _ = max_weight_subtree(t, [1] * t.m)
        assert value == t.m and ids == tuple(range(t.m))

    def test_gap_worth_bridging(self):
        value, ids, _ = max_weight_subtree(path(4), [2, -1, 2])
        assert value == 3 and ids == (0, 1, 2)

    def test_non_finite(self):
        with pytest.raises(NonFiniteWeight):
            max_weight_subtree(path(3), [1.0, float("nan")])

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatch):
            max_weight_subtree(path(3), [1.0])

    @given(st.data())
    def test_matches_brute_force(self, data):
        n = data.draw(st.integers(2, 9))
        seed = data.draw(st.integers(0, 10_000))
        t = random_tree(n, seed)
        ws = data.draw(st.lists(st.integers(-4, 4), min_size=t.m,
                                max_size=t.m))
        value, ids, _ = max_weight_subtree(t, ws)
        assert value == brute_max_weight_subtree(t, ws)
        assert value == sum(ws[e] for e in ids) if ids else value == 0

import math

import pytest
from hypothesis import given, settings, strategies as st

from leafpaths.generators import (
    make_t_delta_h,
    random_degree_sequence,
    random_tree_with_degrees,
)
from leafpaths.greedy import min_height_k
from leafpaths.oracle import brute_lp, free_trees
from leafpaths.pathlens import (
    LengthOverflowError,
    LengthSet,
    RadiusBound,
    certified_lower_bound,
    ceil_log,
    diameter_bound_holds,
    lp,
    lp_lower_bound_theorem1,
    lp_lower_bound_theorem2,
    lp_set,
    rooting_certificates,
    sumset,
    theorem1_holds,
)
from leafpaths.tree import Tree, metrics, root_at

from conftest import all_pairs, path_tree, star_tree


def leaf_pair_oracle(tree):
    d = all_pairs(tree)
    leaves = [v for v in range(tree.n) if tree.degree(v) <= 1]
    return {0} | {d[u][v] for u in leaves for v in leaves if u != v}


class TestSumset:
    def test_small(self):
        assert sumset(LengthSet.of([1, 2]), LengthSet.of([2, 3])) == {3, 4, 5}

    def test_identity(self):
        b = LengthSet.of([0, 4, 7])
        assert sumset(LengthSet.of([0]), b) == b

    def test_empty(self):
        assert len(sumset(LengthSet(), LengthSet.of([1]))) == 0

    def test_overflow(self):
        with pytest.raises(LengthOverflowError):
            sumset(LengthSet.of([3], cap=5), LengthSet.of([3], cap=5))

    def test_within_cap(self):
        assert sumset(LengthSet.of([2], cap=5), LengthSet.of([3], cap=5)) == {5}

    @settings(max_examples=200)
    @given(st.sets(st.integers(0, 80), min_size=1, max_size=20),
           st.sets(st.integers(0, 80), min_size=1, max_size=20))
    def test_matches_double_loop(self, a, b):
        got = sumset(LengthSet.of(a), LengthSet.of(b))
        assert got == {x + y for x in a for y in b}
        assert len(got) >= len(a) + len(b) - 1

    def test_set_protocol(self):
        s = LengthSet.of([5, 0, 2])
        assert list(s) == [0, 2, 5] and 2 in s and 3 not in s and len(s) == 3
        assert s.max() == 5 and str(s) == "{0,2,5}"


class TestLpSet:
    def test_edge(self):
        assert lp_set(path_tree(2)) == {0, 1}
        assert lp(path_tree(2)) == 2

    def test_t32(self):
        assert lp_set(make_t_delta_h(3, 2)) == {0, 2, 4}

    def test_small_tree_against_oracle(self):
        t = Tree.from_edges(5, [(0, 1), (0, 2), (2, 3), (2, 4)])
        assert leaf_pair_oracle(t) == {0, 2, 3}
        assert lp_set(t) == {0, 2, 3}

    def test_star(self):
        assert lp_set(star_tree(3)) == {0, 2}
        assert lp(star_tree(3)) == 2

    def test_t33(self):
        assert lp(make_t_delta_h(3, 3)) == 4

    def test_path4_only_endpoints_are_leaves(self):
        t = path_tree(4)
        assert leaf_pair_oracle(t) == {0, 3}
        assert lp_set(t) == {0, 3} and lp(t) == 2

    def test_single_vertex(self):
        assert lp_set(Tree.from_edges(1, [])) == {0}

    @pytest.mark.parametrize("n", range(2, 11))
    def test_all_shapes(self, n):
        for t in free_trees(n):
            got = lp_set(t)
            assert got == leaf_pair_oracle(t)
            assert 0 in got
            assert got.max() == metrics(t).diameter

    @settings(max_examples=60, deadline=None)
    @given(st.integers(2, 120), st.integers(0, 2**32))
    def test_random_trees_against_brute(self, n, seed):
        t = random_tree_with_degrees(random_degree_sequence(n, seed), seed)
        assert lp_set(t) == brute_lp(t)

    def test_caterpillar_long(self):
        # spine of length 300 with a pendant leaf on every spine vertex
        n = 600
        edges = [(i, i + 1) for i in range(299)] + [(i, 300 + i) for i in range(300)]
        t = Tree.from_edges(n, edges)
        assert lp_set(t) == brute_lp(t)


class TestCertificates:
    def test_t32(self):
        t = make_t_delta_h(3, 2)
        # h(s+, 6) = 2 for s+ = (3,2,2,2,0^6), checked by the exhaustive oracle in test_oracle
        c = certified_lower_bound(t)
        assert c.kind == "equal-depth-class" and c.class_size == 6
        assert c.h_value == 2 and c.bound == 3 == lp(t)
        assert c.recompute() == c.bound

    def test_edge(self):
        c = certified_lower_bound(path_tree(2))
        assert c.bound >= 1 and c.bound <= lp(path_tree(2))

    @pytest.mark.parametrize("n", range(2, 11))
    def test_bound_never_exceeds_lp(self, n):
        for t in free_trees(n):
            c = certified_lower_bound(t)
            assert c.recompute() == c.bound <= lp(t)

    @pytest.mark.parametrize("delta,h", [(3, 1), (3, 4), (4, 3), (5, 2)])
    def test_equality_on_family(self, delta, h):
        t = make_t_delta_h(delta, h)
        assert certified_lower_bound(t).bound == lp(t) == h + 1

    def test_depth_count_certificate(self):
        # a caterpillar rooted at its first vertex has leaves at many depths
        t = Tree.from_edges(7, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6)])
        certs = rooting_certificates(root_at(t, 0))
        dc = [c for c in certs if c.kind == "depth-count"][0]
        assert dc.depths == (1, 2, 3) and dc.bound == 3

    def test_equal_depth_class_uses_greedy_h(self):
        rt = root_at(make_t_delta_h(4, 2), 0)
        for c in rooting_certificates(rt):
            if c.kind == "equal-depth-class":
                from leafpaths.tree import out_degree_sequence_of
                assert c.h_value == min_height_k(out_degree_sequence_of(rt), c.class_size)[0]


class TestBounds:
    def test_radius_bound_t32(self):
        assert lp_lower_bound_theorem2((3, 3, 3, 3, 1, 1, 1, 1, 1, 1)).value == 1

    def test_radius_bound_t38(self):
        s = [3] * (1 + 3 * (2**7 - 1)) + [1] * (3 * 2**7)
        assert lp_lower_bound_theorem2(s).value == 5

    def test_radius_bound_edge(self):
        b = lp_lower_bound_theorem2([1, 1])
        assert b.rad == 1 and b.value == 1

    def test_radius_bound_rejects_degree_two(self):
        with pytest.raises(ValueError):
            lp_lower_bound_theorem2([2, 2, 1, 1])

    @pytest.mark.parametrize("rad", range(1, 70))
    def test_exact_comparison_matches_real_inequality(self, rad):
        b = RadiusBound(rad)
        for value in range(0, rad + 2):
            real = value - (rad - math.log2(rad))
            if abs(real) > 1e-9:
                assert b.holds(value) == (real > 0)
        # exact at powers of two: r - log2 r is an integer
        if rad & (rad - 1) == 0:
            assert b.holds(rad - rad.bit_length() + 1)
            assert not b.holds(rad - rad.bit_length())

    def test_degree_leaf_bound_values(self):
        assert lp_lower_bound_theorem1(3, 6) == pytest.approx(math.log2(6))
        assert lp_lower_bound_theorem1(3, 2) == pytest.approx(1)
        assert lp_lower_bound_theorem1(4, 36) == pytest.approx(3.8928, abs=1e-4)

    def test_degree_leaf_bound_domain(self):
        with pytest.raises(ValueError):
            lp_lower_bound_theorem1(2, 5)
        with pytest.raises(ValueError):
            lp_lower_bound_theorem1(3, 1)

    def test_degree_leaf_bound_exact(self):
        assert theorem1_holds(3, 3, 6)  # 2^3 >= 6
        assert not theorem1_holds(2, 3, 6)
        assert theorem1_holds(1, 3, 2)  # log2 2 = 1 exactly

    def test_ceil_log(self):
        assert [ceil_log(2, x) for x in (1, 2, 3, 4, 5, 8, 9)] == [0, 1, 2, 2, 3, 3, 4]

    def test_diameter_bound(self):
        assert diameter_bound_holds(1, 5)  # 27 >= 25
        assert not diameter_bound_holds(1, 6)
        assert diameter_bound_holds(2, 14)

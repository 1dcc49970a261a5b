"""Exact-enumeration correctness and explicit-graph cross-checks."""

import math
from fractions import Fraction

import numpy as np
import pytest

from gnpcrit import _kernels
from gnpcrit.explore import GraphParams
from gnpcrit.oracle import (
    ExplicitGraph,
    component_size_of,
    components_of,
    enumerate_exact,
    explore_on_graph,
    sample_explicit,
)
from gnpcrit.rng import stream

# connected labeled graphs on k vertices, keyed by edge count; the classical
# counts (3 trees + 1 triangle at k=3, 16+15+6+1 = 38 at k=4, ...) give an
# independent closed form for the |C(v)| distribution
CONNECTED_BY_EDGES = {
    1: {0: 1},
    2: {1: 1},
    3: {2: 3, 3: 1},
    4: {3: 16, 4: 15, 5: 6, 6: 1},
    5: {4: 125, 5: 222, 6: 205, 7: 120, 8: 45, 9: 10, 10: 1},
}


def cv_distribution_closed_form(n: int, p: Fraction) -> dict[int, Fraction]:
    """P(|C(v)| = k) = C(n-1, k-1) * [sum_e N_conn(k, e) p^e q^(C(k,2)-e)] * q^(k(n-k))."""
    q = 1 - p
    out = {}
    for k in range(1, n + 1):
        internal = sum(
            cnt * p**e * q ** (k * (k - 1) // 2 - e)
            for e, cnt in CONNECTED_BY_EDGES[k].items()
        )
        out[k] = math.comb(n - 1, k - 1) * internal * q ** (k * (n - k))
    return out


class TestEnumeration:
    def test_n3_reference(self):
        dist_cv, dist_c1 = enumerate_exact(3, Fraction(1, 3))
        assert dist_c1.as_dict() == {
            1: Fraction(8, 27),
            2: Fraction(12, 27),
            3: Fraction(7, 27),
        }
        assert dist_cv.as_dict() == {
            1: Fraction(4, 9),
            2: Fraction(8, 27),
            3: Fraction(7, 27),
        }

    def test_n2_certain_edge(self):
        _, dist_c1 = enumerate_exact(2, Fraction(1))
        assert dist_c1.as_dict() == {1: Fraction(0), 2: Fraction(1)}

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    @pytest.mark.parametrize("p", [Fraction(1, 4), Fraction(3, 10), Fraction(1, 2)])
    def test_cv_matches_connectivity_closed_form(self, n, p):
        # independent route: connected-graph counts by edge number
        dist_cv, _ = enumerate_exact(n, p)
        assert dist_cv.as_dict() == cv_distribution_closed_form(n, p)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
    def test_probabilities_sum_to_one_exactly(self, n):
        dist_cv, dist_c1 = enumerate_exact(n, Fraction(2, 7))
        assert dist_cv.total() == 1
        assert dist_c1.total() == 1

    def test_float_p_is_exact_too(self):
        dist_cv, dist_c1 = enumerate_exact(4, 0.25)
        assert dist_cv.total() == 1
        # 0.25 is dyadic, so the float equals the rational
        assert dist_cv.as_dict() == enumerate_exact(4, Fraction(1, 4))[0].as_dict()

    def test_largest_at_least_cv(self):
        dist_cv, dist_c1 = enumerate_exact(5, Fraction(1, 5))
        # P(|C1| >= k) >= P(|C(v)| >= k) for every k
        cv, c1 = dist_cv.as_dict(), dist_c1.as_dict()
        for k in range(1, 6):
            tail_cv = sum(cv[j] for j in range(k, 6))
            tail_c1 = sum(c1[j] for j in range(k, 6))
            assert tail_c1 >= tail_cv

    def test_cost_guard(self):
        with pytest.raises(ValueError):
            enumerate_exact(8, 0.5)

    def test_p_domain(self):
        with pytest.raises(ValueError):
            enumerate_exact(3, 1.5)


class TestExplicitSampling:
    def test_p_zero_empty(self):
        g = sample_explicit(GraphParams(n=20, p=0.0), stream(1))
        assert g.edges == ()

    def test_p_one_complete(self):
        g = sample_explicit(GraphParams(n=4, p=1.0), stream(1))
        assert len(g.edges) == 6
        assert set(g.edges) == {(i, j) for i in range(4) for j in range(i + 1, 4)}

    def test_mean_edge_count(self):
        # E[edges] = p n(n-1)/2 = 499.5 at n = 1000, p = 1/1000
        n, p, m = 1000, 1e-3, 5000
        counts = [len(sample_explicit(GraphParams(n=n, p=p), stream(2, t)).edges)
                  for t in range(m)]
        expected = p * n * (n - 1) / 2
        se = math.sqrt(expected * (1 - p) / m)
        assert abs(np.mean(counts) - expected) <= 3 * se

    def test_edges_sorted_unique_valid(self):
        g = sample_explicit(GraphParams(n=100, p=0.05), stream(3))
        assert len(set(g.edges)) == len(g.edges)
        assert all(0 <= i < j < 100 for i, j in g.edges)
        assert list(g.edges) == sorted(g.edges)

    def test_size_guard(self):
        with pytest.raises(ValueError):
            sample_explicit(GraphParams(n=10**6, p=1e-6), stream(0))
        with pytest.raises(ValueError):
            sample_explicit(GraphParams(n=10**4, p=0.9), stream(0))


class TestComponents:
    def test_empty_graph(self):
        result = components_of(ExplicitGraph(n=5, edges=()))
        assert list(result.sizes) == [1, 1, 1, 1, 1]

    def test_path(self):
        g = ExplicitGraph(n=4, edges=((0, 1), (1, 2)))
        result = components_of(g)
        assert sorted(result.sizes) == [1, 3]
        assert result.largest == 3 and result.second_largest == 1

    def test_sizes_sum(self):
        g = sample_explicit(GraphParams(n=500, p=0.004), stream(4))
        assert components_of(g).sizes.sum() == 500

    def test_two_sample_tv_against_process_level(self):
        # graph-level |C1| vs process-level |C1|, both Monte Carlo; the
        # comparison is over width-10 bins because per-integer TV between two
        # finite samples has a noise floor above the tolerance on this support
        n, p, m = 100, 0.01, 20_000
        graph_largest = np.array([
            components_of(sample_explicit(GraphParams(n=n, p=p), stream(5, t))).largest
            for t in range(m)
        ])
        proc_largest = np.empty(m, dtype=np.int64)
        proc_second = np.empty(m, dtype=np.int64)
        _kernels.sweep_batch(n, p, 50_000, 0, 0, proc_largest, proc_second)
        bins = np.arange(0, n + 10, 10)
        f_graph = np.histogram(graph_largest, bins=bins)[0] / m
        f_proc = np.histogram(proc_largest, bins=bins)[0] / m
        tv = 0.5 * np.abs(f_graph - f_proc).sum()
        assert tv <= 0.02


class TestExploreOnGraph:
    def test_isolated_vertex(self):
        g = ExplicitGraph(n=3, edges=((1, 2),))
        size, trace = explore_on_graph(g, 0)
        assert size == 1
        assert list(trace) == [0]

    def test_triangle(self):
        g = ExplicitGraph(n=3, edges=((0, 1), (0, 2), (1, 2)))
        size, trace = explore_on_graph(g, 0)
        assert size == 3
        assert list(trace) == [2, 1, 0]

    def test_matches_union_find_on_random_graphs(self):
        params = GraphParams(n=50, p=0.02)
        for t in range(1000):
            g = sample_explicit(params, stream(6, t))
            for v in (0, 7):
                size, trace = explore_on_graph(g, v)
                assert size == component_size_of(g, v)
                assert len(trace) == size
                assert trace[-1] == 0

    def test_vertex_range(self):
        with pytest.raises(ValueError):
            explore_on_graph(ExplicitGraph(n=3, edges=()), 3)


class TestSerialization:
    def test_round_trip(self):
        g = sample_explicit(GraphParams(n=30, p=0.1), stream(7))
        assert ExplicitGraph.from_text(g.to_text()) == g

    def test_format(self):
        g = ExplicitGraph(n=4, edges=((0, 2), (1, 3)))
        assert g.to_text() == "4 2\n0 2\n1 3\n"

    def test_save_load(self, tmp_path):
        g = ExplicitGraph(n=5, edges=((0, 1), (2, 4)))
        path = tmp_path / "graph.txt"
        g.save(path)
        assert ExplicitGraph.load(path) == g

    def test_bad_edge_rejected(self):
        with pytest.raises(ValueError):
            ExplicitGraph(n=3, edges=((2, 1),))
        with pytest.raises(ValueError):
            ExplicitGraph(n=3, edges=((0, 3),))
        with pytest.raises(ValueError):
            ExplicitGraph(n=3, edges=((0, 1), (0, 1)))

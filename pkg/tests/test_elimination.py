import math

import numpy as np
import pytest

from pivotlab import (Dataset, EliminationGraph, KnnQuery, Minkowski,
                      RangeQuery, build_distance_matrix,
                      build_elimination_graph, compute_query_distances,
                      eliminates, graph_to_metric, knn_radius, linear_scan)
from pivotlab.metrics import QueryDistances

from conftest import (PLANAR9_POINTS, PLANAR9_QUERY, PLANAR9_RADIUS,
                      make_planar9, random_vector_instance)


class TestEliminates:
    def test_tie_fan_upper_inclusion(self, tie_fan_near):
        _, dm, qd = tie_fan_near
        assert eliminates(0, 1, qd, dm, 8.0, use_upper=True)
        assert not eliminates(0, 1, qd, dm, 8.0, use_upper=False)

    def test_graph_metric_eliminates_adjacent_only(self):
        ds, q, r = graph_to_metric(4, [(0, 1), (2, 3)])
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, q)
        for p in range(4):
            for x in range(4):
                if p == x:
                    continue
                adjacent = (p, x) in [(0, 1), (1, 0), (2, 3), (3, 2)]
                assert eliminates(p, x, qd, dm, r, use_upper=True) == adjacent

    def test_self_elimination_rejected(self, tie_fan_near):
        _, dm, qd = tie_fan_near
        with pytest.raises(ValueError):
            eliminates(1, 1, qd, dm, 8.0, True)


class TestBuildEliminationGraph:
    def test_single_object(self):
        ds = Dataset(np.zeros((1, 2)), Minkowski(2.0))
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, np.ones(2))
        g = build_elimination_graph(dm, qd, RangeQuery(0.5))
        assert g.n == 1 and g.graph.edge_count == 0

    def test_identical_objects_complete_digraph(self):
        ds = Dataset(np.zeros((4, 2)), Minkowski(2.0))
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, np.array([0.3, 0.0]))
        g = build_elimination_graph(dm, qd, RangeQuery(1.0, use_upper=True))
        assert g.graph.edge_count == 4 * 3

    def test_edges_match_pairwise_predicate(self):
        _, dm, qd, rng = random_vector_instance(23, n_lo=8, n_hi=16)
        r, _ = knn_radius(qd, 3)
        for use_upper in (True, False):
            g = build_elimination_graph(dm, qd, RangeQuery(r, use_upper))
            edges = set(g.graph.edges())
            for p in range(dm.n):
                for x in range(dm.n):
                    if p == x:
                        continue
                    assert ((p, x) in edges) == eliminates(p, x, qd, dm, r, use_upper)

    def test_knn_spec_derives_radius(self):
        _, dm, qd, _ = random_vector_instance(29, n_lo=10, n_hi=20)
        g = build_elimination_graph(dm, qd, KnnQuery(3))
        r, unique = knn_radius(qd, 3)
        assert g.r == pytest.approx(r)
        assert g.use_upper is False
        assert g.knn_unique == unique

    def test_vertex_count_equals_object_count(self):
        for seed in range(5):
            ds, dm, qd, _ = random_vector_instance(seed, n_lo=3, n_hi=12)
            g = build_elimination_graph(dm, qd, RangeQuery(0.4))
            assert g.n == ds.n


class TestKnnRadius:
    def test_basic(self):
        qd = QueryDistances(None, np.array([3.0, 1.0, 2.0]))
        assert knn_radius(qd, 2) == (2.0, True)

    def test_tie_at_boundary(self):
        qd = QueryDistances(None, np.array([1.0, 1.0, 5.0]))
        assert knn_radius(qd, 1) == (1.0, False)

    def test_tie_fan_far_five_way_tie(self, tie_fan_far):
        _, _, qd = tie_fan_far
        r, unique = knn_radius(qd, 1)
        assert r == pytest.approx(8.0)
        assert unique is False

    def test_k_out_of_range(self):
        qd = QueryDistances(None, np.array([1.0]))
        with pytest.raises(ValueError):
            knn_radius(qd, 2)
        with pytest.raises(ValueError):
            knn_radius(qd, 0)

    def test_k_equals_n_is_unique(self):
        qd = QueryDistances(None, np.array([2.0, 1.0]))
        assert knn_radius(qd, 2) == (2.0, True)


class TestLinearScan:
    def test_radius_below_min(self):
        _, _, qd, _ = random_vector_instance(31)
        assert linear_scan(qd, float(qd.dist.min()) / 2) == []

    def test_infinite_radius(self):
        _, _, qd, _ = random_vector_instance(37)
        assert linear_scan(qd, math.inf) == list(range(qd.n))

    def test_planar9_circle_membership(self, planar9):
        _, _, qd = planar9
        # independent derivation straight from the coordinates
        expected = [i for i, p in enumerate(PLANAR9_POINTS)
                    if math.dist(p, PLANAR9_QUERY) <= PLANAR9_RADIUS]
        assert linear_scan(qd, PLANAR9_RADIUS) == expected
        assert expected == [1, 3, 5, 7, 8]

    def test_reveal_flag_pays_for_everything(self):
        _, _, qd, _ = random_vector_instance(41)
        linear_scan(qd, 0.5, reveal=True)
        assert qd.computations == qd.n


class TestNoInteraction:
    def test_multi_pivot_elimination_is_union_of_single(self):
        for seed in range(20):
            _, dm, qd, rng = random_vector_instance(seed + 100, n_lo=6, n_hi=20)
            r, _ = knn_radius(qd, 2)
            pivots = rng.choice(dm.n, size=3, replace=False).tolist()
            lo = np.abs(qd.dist[pivots][:, None] - dm.values[pivots, :])
            combined = lo.max(axis=0) > r + dm.eps
            single = (lo > r + dm.eps).any(axis=0)
            assert np.array_equal(combined, single)


class TestGraphJson:
    def test_round_trip(self, planar9):
        _, dm, qd = planar9
        g = build_elimination_graph(dm, qd, RangeQuery(PLANAR9_RADIUS, False))
        doc = g.to_json()
        back = EliminationGraph.from_json(doc)
        assert back.n == g.n
        assert back.r == g.r
        assert back.use_upper == g.use_upper
        assert back.graph.edges() == g.graph.edges()

    def test_json_keys(self, planar9):
        import json
        _, dm, qd = planar9
        g = build_elimination_graph(dm, qd, RangeQuery(1.0))
        doc = json.loads(g.to_json())
        assert set(doc) == {"n", "r", "use_upper", "edges"}

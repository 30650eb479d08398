import io
import itertools
import math

import numpy as np
import pytest

from pivotlab import (DirectedGraph, KnnQuery, RangeQuery, brute_force_domset,
                      build_distance_matrix, build_elimination_graph,
                      compute_query_distances, exact_domset, export_ilp,
                      graph_stats, graph_to_metric, greedy_domset,
                      knn_hardness_instance, knn_radius, random_digraph,
                      verify_domination, verify_metric)
from pivotlab.metrics import DistanceMatrix

from conftest import PLANAR9_RADIUS, make_planar9


def star(n):
    """Directed star: vertex 0 points at everyone else."""
    return DirectedGraph.from_edges(n, [(0, i) for i in range(1, n)])


def edgeless(n):
    return DirectedGraph.from_edges(n, [])


def undirected_gamma_brute(n, edges):
    """Independent oracle for the undirected domination number."""
    closed = [1 << v for v in range(n)]
    for u, v in edges:
        closed[u] |= 1 << v
        closed[v] |= 1 << u
    full = (1 << n) - 1
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            acc = 0
            for v in combo:
                acc |= closed[v]
            if acc == full:
                return size
    return n


def random_undirected(n, p, seed):
    rng = np.random.Generator(np.random.PCG64(seed))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return edges


class TestVerifyDomination:
    def test_full_set(self):
        g = edgeless(4)
        assert verify_domination(g, range(4))

    def test_proper_subset_of_edgeless(self):
        assert not verify_domination(edgeless(4), [0, 1])

    def test_star_center(self):
        assert verify_domination(star(5), [0])
        assert not verify_domination(star(5), [1])


class TestGreedy:
    def test_edgeless_takes_everything(self):
        picks, counts = greedy_domset(edgeless(5))
        assert picks == [0, 1, 2, 3, 4]
        assert counts == [1] * 5

    def test_star_takes_center(self):
        picks, counts = greedy_domset(star(5))
        assert picks == [0]
        assert counts == [5]

    def test_always_dominates_and_ln_factor(self):
        for seed in range(40):
            rng = np.random.Generator(np.random.PCG64(seed))
            n = int(rng.integers(1, 13))
            g = random_digraph(n, [0.1, 0.3, 0.5, 0.7, 0.9][seed % 5], seed)
            picks, counts = greedy_domset(g)
            assert verify_domination(g, picks)
            assert sum(counts) == n
            gamma = brute_force_domset(g).upper_bound
            assert len(picks) <= (math.log(n) + 1) * gamma


class TestBruteForce:
    def test_single_vertex(self):
        assert brute_force_domset(edgeless(1)).upper_bound == 1

    def test_directed_3_cycle(self):
        g = DirectedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
        res = brute_force_domset(g)
        assert res.upper_bound == 2

    def test_complete_digraph(self):
        n = 5
        g = DirectedGraph.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j])
        res = brute_force_domset(g)
        assert res.upper_bound == 1
        assert res.vertices == [0]  # lexicographically first optimum

    def test_guard(self):
        with pytest.raises(ValueError):
            brute_force_domset(edgeless(21))


class TestExactSolver:
    def test_solved_at_root(self):
        res = exact_domset(star(6))
        assert res.proven_optimal and res.upper_bound == 1
        assert res.nodes_explored == 0

    def test_matches_brute_force_on_random_digraphs(self):
        for seed in range(60):
            rng = np.random.Generator(np.random.PCG64(seed + 500))
            n = int(rng.integers(1, 13))
            g = random_digraph(n, [0.1, 0.3, 0.5, 0.7, 0.9][seed % 5], seed + 500)
            res = exact_domset(g)
            ref = brute_force_domset(g)
            assert res.proven_optimal
            assert res.upper_bound == ref.upper_bound
            assert verify_domination(g, res.vertices)

    def test_trace_brackets_gamma_and_is_monotone(self):
        for seed in range(20):
            g = random_digraph(10, 0.3, seed + 900)
            gamma = brute_force_domset(g).upper_bound
            res = exact_domset(g)
            lowers = [lo for _, lo, _ in res.gap_trace]
            uppers = [up for _, _, up in res.gap_trace]
            assert all(lo <= gamma <= up for lo, up in zip(lowers, uppers))
            assert lowers == sorted(lowers)
            assert uppers == sorted(uppers, reverse=True)

    def test_zero_node_budget_anytime_contract(self):
        g = random_digraph(30, 0.2, 4)
        res = exact_domset(g, node_budget=0)
        assert res.lower_bound >= 1
        assert res.lower_bound <= res.upper_bound
        assert verify_domination(g, res.vertices)

    def test_relative_gap_target_stops_early(self):
        g = random_digraph(40, 0.15, 8)
        res = exact_domset(g, rel_gap=0.9)
        assert res.lower_bound <= res.upper_bound
        assert verify_domination(g, res.vertices)

    def test_planar9_instance(self, planar9):
        _, dm, qd = planar9
        g = build_elimination_graph(dm, qd, RangeQuery(PLANAR9_RADIUS, use_upper=False))
        res = exact_domset(g.graph)
        assert res.proven_optimal and res.upper_bound == 5
        assert brute_force_domset(g.graph).upper_bound == 5


def parse_lp(text):
    """Independent mini-parser: returns per-constraint variable index sets."""
    lines = text.splitlines()
    assert lines[0] == "Minimize"
    assert "End" in lines
    sub = lines.index("Subject To")
    binary = lines.index("Binary")
    merged = []
    for line in lines[sub + 1:binary]:
        if line.startswith("   "):
            merged[-1] += " " + line.strip()
        else:
            merged.append(line.strip())
    constraints = []
    for line in merged:
        _, expr = line.split(":", 1)
        lhs, rhs = expr.split(">=")
        assert rhs.strip() == "1"
        constraints.append({int(t.strip()[1:]) for t in lhs.split("+")})
    return constraints


def min_hitting_set_size(constraints, n):
    for size in range(0, n + 1):
        for combo in itertools.combinations(range(n), size):
            chosen = set(combo)
            if all(c & chosen for c in constraints):
                return size
    return n


class TestExportIlp:
    def test_single_vertex(self):
        sink = io.StringIO()
        export_ilp(edgeless(1), sink)
        assert sink.getvalue() == (
            "Minimize\n obj: x0\nSubject To\n c0: x0 >= 1\nBinary\n x0\nEnd\n")

    def test_single_edge_constraint(self):
        sink = io.StringIO()
        export_ilp(DirectedGraph.from_edges(2, [(0, 1)]), sink)
        assert " c1: x1 + x0 >= 1\n" in sink.getvalue()

    def test_byte_stable(self):
        g = random_digraph(12, 0.4, 77)
        a, b = io.StringIO(), io.StringIO()
        export_ilp(g, a)
        export_ilp(g, b)
        assert a.getvalue() == b.getvalue()

    def test_planar9_lp_optimum_is_5(self, planar9):
        _, dm, qd = planar9
        g = build_elimination_graph(dm, qd, RangeQuery(PLANAR9_RADIUS, use_upper=False))
        sink = io.StringIO()
        export_ilp(g.graph, sink)
        constraints = parse_lp(sink.getvalue())
        assert len(constraints) == 9
        assert min_hitting_set_size(constraints, 9) == 5

    def test_lp_solution_matches_brute_force(self):
        for seed in range(10):
            g = random_digraph(8, 0.35, seed + 30)
            sink = io.StringIO()
            export_ilp(g, sink)
            constraints = parse_lp(sink.getvalue())
            assert min_hitting_set_size(constraints, 8) == brute_force_domset(g).upper_bound


class TestGraphToMetric:
    def test_path_dominated_by_middle(self):
        ds, q, r = graph_to_metric(3, [(0, 1), (1, 2)])
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, q)
        g = build_elimination_graph(dm, qd, RangeQuery(r))
        assert brute_force_domset(g.graph).upper_bound == 1

    def test_four_cycle(self):
        edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
        ds, q, r = graph_to_metric(4, edges)
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, q)
        g = build_elimination_graph(dm, qd, RangeQuery(r))
        assert brute_force_domset(g.graph).upper_bound == 2
        assert undirected_gamma_brute(4, edges) == 2

    def test_edgeless_needs_every_object(self):
        n = 6
        ds, q, r = graph_to_metric(n, [])
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, q)
        g = build_elimination_graph(dm, qd, RangeQuery(r))
        assert brute_force_domset(g.graph).upper_bound == n

    def test_metric_axioms_and_query_distance(self):
        ds, q, r = graph_to_metric(5, [(0, 1), (2, 4)])
        full = DistanceMatrix(ds.metric.matrix, eps=0.0)
        assert verify_metric(full, check_identity=True).ok
        assert all(ds.metric.matrix[q, v] == 2.0 for v in range(5))
        assert r == 0.5

    def test_closed_neighborhoods_match_source_graph(self):
        for seed in range(15):
            rng = np.random.Generator(np.random.PCG64(seed + 60))
            n = int(rng.integers(1, 10))
            edges = random_undirected(n, 0.4, seed + 60)
            ds, q, r = graph_to_metric(n, edges)
            dm = build_distance_matrix(ds)
            qd = compute_query_distances(ds, q)
            for use_upper in (True, False):  # the upper bound can never fire here
                g = build_elimination_graph(dm, qd, RangeQuery(r, use_upper))
                neighbor_sets = {v: set() for v in range(n)}
                for u, v in edges:
                    neighbor_sets[u].add(v)
                    neighbor_sets[v].add(u)
                for v in range(n):
                    assert set(g.graph.out(v)) == neighbor_sets[v]

    def test_objective_preserved_on_random_graphs(self):
        for seed in range(30):
            rng = np.random.Generator(np.random.PCG64(seed + 200))
            n = int(rng.integers(1, 13))
            edges = random_undirected(n, [0.2, 0.5, 0.8][seed % 3], seed + 200)
            ds, q, r = graph_to_metric(n, edges)
            assert ds.n == n  # object count equals vertex count
            dm = build_distance_matrix(ds)
            qd = compute_query_distances(ds, q)
            g = build_elimination_graph(dm, qd, RangeQuery(r))
            res = exact_domset(g.graph)
            assert res.proven_optimal
            assert res.upper_bound == undirected_gamma_brute(n, edges)


class TestKnnHardness:
    def test_single_vertex_nearest_is_helper(self):
        ds, q, k = knn_hardness_instance(1, [])
        assert k == 1 and ds.n == 2
        qd = compute_query_distances(ds, q)
        assert int(np.argmin(qd.dist)) == 1  # the helper object
        r, unique = knn_radius(qd, 1)
        assert unique

    def test_metric_axioms(self):
        ds, _, _ = knn_hardness_instance(4, [(0, 1), (1, 2), (2, 3)])
        assert verify_metric(DistanceMatrix(ds.metric.matrix), check_identity=True).ok

    @pytest.mark.parametrize("name,n,edges,expected", [
        ("triangle", 3, [(0, 1), (1, 2), (0, 2)], 2),
        ("path", 3, [(0, 1), (1, 2)], 2),
    ])
    def test_small_graph_optimum_counts(self, name, n, edges, expected):
        ds, q, k = knn_hardness_instance(n, edges)
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, q)
        g = build_elimination_graph(dm, qd, KnnQuery(k))
        assert brute_force_domset(g.graph).upper_bound == expected

    def test_optimum_is_gamma_plus_one(self):
        for seed in range(20):
            rng = np.random.Generator(np.random.PCG64(seed + 300))
            n = int(rng.integers(1, 11))
            edges = random_undirected(n, 0.4, seed + 300)
            ds, q, k = knn_hardness_instance(n, edges)
            dm = build_distance_matrix(ds)
            qd = compute_query_distances(ds, q)
            r, unique = knn_radius(qd, k)
            assert unique
            g = build_elimination_graph(dm, qd, KnnQuery(k))
            res = exact_domset(g.graph)
            assert res.proven_optimal
            assert res.upper_bound == undirected_gamma_brute(n, edges) + 1


class TestGraphStats:
    def test_edgeless(self):
        stats = graph_stats(edgeless(5))
        assert stats == {"n": 5, "edge_count": 0,
                         "max_closed_out_degree": 1, "in_isolated": 5}

    def test_star(self):
        stats = graph_stats(star(5))
        assert stats["max_closed_out_degree"] == 5
        assert stats["in_isolated"] == 1

    def test_planar9_forced_vertices(self, planar9):
        _, dm, qd = planar9
        g = build_elimination_graph(dm, qd, RangeQuery(PLANAR9_RADIUS, use_upper=False))
        stats = graph_stats(g.graph)
        assert stats["n"] == 9
        # every in-isolated vertex is a forced pivot; here they are the optimum
        assert stats["in_isolated"] == exact_domset(g.graph).upper_bound

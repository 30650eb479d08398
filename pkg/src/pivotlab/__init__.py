"""pivotlab: exact optimality baselines for pivot-based metric search.

Computes, for any dataset and query, the minimum number of distance
computations that can resolve it (via directed minimum dominating sets on
the elimination graph), and benchmarks AESA-family pivot heuristics against
that floor.
"""

from .data_io import (WorkloadConfig, gen_uniform_vectors, load_strings,
                      load_vectors, withhold_queries)
from .domset import (DomSetResult, brute_force_domset, exact_domset,
                     export_ilp, graph_stats, graph_to_metric, greedy_domset,
                     knn_hardness_instance, verify_domination)
from .elimination import (EliminationGraph, KnnQuery, RangeQuery,
                          build_elimination_graph, eliminates, knn_radius,
                          linear_scan)
from .graphs import DirectedGraph, random_digraph
from .metrics import (Bounds, Dataset, DistanceMatrix, Explicit, Levenshtein,
                      MetricReport, Minkowski, QueryDistances,
                      adversarial_metrics, build_distance_matrix,
                      compute_distance, compute_query_distances, pivot_bounds,
                      verify_metric)
from .simulate import (SimTrace, aesa_score, gaesa_score, iaesa2_order,
                       make_strategy, oracle_power, run_knn_search,
                       run_range_search)

__version__ = "0.1.0"

__all__ = [
    "Bounds", "Dataset", "DirectedGraph", "DistanceMatrix", "DomSetResult",
    "EliminationGraph", "Explicit", "KnnQuery", "Levenshtein", "MetricReport",
    "Minkowski", "QueryDistances", "RangeQuery", "SimTrace", "WorkloadConfig",
    "adversarial_metrics", "aesa_score", "brute_force_domset",
    "build_distance_matrix", "build_elimination_graph", "compute_distance",
    "compute_query_distances", "eliminates", "exact_domset", "export_ilp",
    "gaesa_score", "gen_uniform_vectors", "graph_stats", "graph_to_metric",
    "greedy_domset", "iaesa2_order", "knn_hardness_instance", "knn_radius",
    "linear_scan", "load_strings", "load_vectors", "make_strategy",
    "oracle_power", "pivot_bounds", "random_digraph", "run_knn_search",
    "run_range_search", "verify_domination", "verify_metric",
    "withhold_queries",
]

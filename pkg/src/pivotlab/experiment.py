"""Benchmark harness: method sweeps over k with an exact-optimum baseline.

For every withheld query and every k, the radius is the query's k-NN
distance, each heuristic runs the corresponding range search, and the
optimum is the domination number of the elimination graph.  Emitted TSVs are
fully determined by the workload config and master seed: solver runs are
node-budgeted (never wall-clock-budgeted) unless a time budget is requested
explicitly.
"""
from __future__ import annotations

import logging
import statistics
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .data_io import LoadedWorkload, WorkloadConfig, load_workload
from .domset import exact_domset
from .elimination import RangeQuery, build_elimination_graph, knn_radius
from .metrics import build_distance_matrix, compute_query_distances
from .simulate import METHOD_NAMES, make_strategy, run_range_search

logger = logging.getLogger(__name__)

OPTIMUM = "optimum"
ALL_METHODS = (OPTIMUM,) + tuple(METHOD_NAMES)

RESULTS_HEADER = ("k", "method", "mean_computations", "stddev", "queries", "proven")
RAW_HEADER = ("k", "method", "query", "computations", "lower", "upper", "proven")


@dataclass
class SolverLimits:
    node_budget: int | None = None
    time_budget: float | None = None
    abs_gap: int = 0
    rel_gap: float = 0.0


@dataclass
class ExperimentSpec:
    workload: WorkloadConfig
    k_values: list[int] = field(default_factory=lambda: [1, 3, 5, 7, 9, 11])
    methods: list[str] = field(default_factory=lambda: list(ALL_METHODS))
    use_upper: bool = True
    master_seed: int = 0
    limits: SolverLimits = field(default_factory=SolverLimits)
    query_count: int | None = None  # overrides the workload config
    base_dir: str | None = None

    def validate(self) -> None:
        if not self.k_values:
            raise ValueError("need at least one k value")
        if not self.methods:
            raise ValueError("need at least one method")
        for m in self.methods:
            if m not in ALL_METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {ALL_METHODS}")


@dataclass
class CellResult:
    k: int
    method: str
    query: int
    computations: float  # heuristic count, or incumbent size for the optimum
    lower: float
    upper: float
    proven: bool


def cell_seed(master_seed: int, query_ordinal: int, k: int) -> int:
    """Fresh, reproducible stream per (query, k) cell for the random baseline."""
    ss = np.random.SeedSequence([int(master_seed), int(query_ordinal), int(k)])
    return int(ss.generate_state(1, np.uint64)[0])


def run_experiment(spec: ExperimentSpec) -> tuple[list[CellResult], LoadedWorkload]:
    spec.validate()
    loaded = load_workload(spec.workload, base_dir=spec.base_dir,
                           default_seed=spec.master_seed,
                           override_query_count=spec.query_count)
    ds, queries = loaded.dataset, loaded.queries
    if not queries:
        raise ValueError("workload has no queries; set a query count or indices")
    for k in spec.k_values:
        if not 1 <= k <= ds.n:
            raise ValueError(f"k={k} out of range for dataset of size {ds.n}")

    logger.info("building %d x %d distance matrix", ds.n, ds.n)
    dm = build_distance_matrix(ds)
    cells: list[CellResult] = []
    for qi, query in enumerate(queries):
        qd_base = compute_query_distances(ds, query)
        for k in spec.k_values:
            r, _unique = knn_radius(qd_base, k)
            graph = None
            for method in spec.methods:
                if method == OPTIMUM:
                    if graph is None:
                        graph = build_elimination_graph(
                            dm, qd_base, RangeQuery(r, spec.use_upper))
                    res = exact_domset(graph.graph,
                                       time_budget=spec.limits.time_budget,
                                       node_budget=spec.limits.node_budget,
                                       abs_gap=spec.limits.abs_gap,
                                       rel_gap=spec.limits.rel_gap)
                    cells.append(CellResult(k, method, qi, res.upper_bound,
                                            res.lower_bound, res.upper_bound,
                                            res.proven_optimal))
                else:
                    strategy = make_strategy(method, cell_seed(spec.master_seed, qi, k))
                    trace = run_range_search(strategy, dm, qd_base.fresh(), r,
                                             spec.use_upper)
                    c = trace.computations
                    cells.append(CellResult(k, method, qi, c, c, c, True))
            logger.info("query %d/%d k=%d done", qi + 1, len(queries), k)
    return cells, loaded


def aggregate_rows(cells: list[CellResult], spec: ExperimentSpec) -> list[tuple]:
    """One row per (k, method): mean count (or [lower,upper] bracket), stddev."""
    rows = []
    for k in spec.k_values:
        for method in spec.methods:
            group = [c for c in cells if c.k == k and c.method == method]
            if not group:
                continue
            uppers = [c.upper for c in group]
            stddev = statistics.stdev(uppers) if len(uppers) > 1 else 0.0
            proven = all(c.proven for c in group)
            if proven:
                mean_cell = f"{statistics.fmean(uppers):.6f}"
            else:
                lo = statistics.fmean([c.lower for c in group])
                hi = statistics.fmean(uppers)
                mean_cell = f"[{lo:.6f},{hi:.6f}]"
            rows.append((k, method, mean_cell, f"{stddev:.6f}", len(group),
                         "true" if proven else "false"))
    return rows


def write_results_tsv(rows: list[tuple], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(RESULTS_HEADER) + "\n")
        for row in rows:
            fh.write("\t".join(str(col) for col in row) + "\n")


def write_raw_tsv(cells: list[CellResult], path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(RAW_HEADER) + "\n")
        for c in cells:
            fh.write(f"{c.k}\t{c.method}\t{c.query}\t{c.computations:.0f}\t"
                     f"{c.lower:.0f}\t{c.upper:.0f}\t"
                     f"{'true' if c.proven else 'false'}\n")


def write_gap_tsv(trace: list[tuple[float, int, int]], path) -> None:
    """Gap trace TSV mirroring the solver's anytime bounds over time."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("secs\tlower\tupper\tgap_percent\n")
        for secs, lower, upper in trace:
            gap = 0.0 if upper <= 0 else (upper - lower) / upper * 100.0
            fh.write(f"{secs:.6f}\t{lower}\t{upper}\t{gap:.6f}\n")


def run_to_directory(spec: ExperimentSpec, out_dir) -> Path:
    """Run the sweep and write results.tsv plus per-query raw.tsv."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    cells, _ = run_experiment(spec)
    write_results_tsv(aggregate_rows(cells, spec), out / "results.tsv")
    write_raw_tsv(cells, out / "raw.tsv")
    return out

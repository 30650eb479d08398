"""Command-line front end: sweeps, optimum solves, reductions, exports, plots."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .data_io import (WorkloadConfig, load_explicit_instance, load_workload,
                      save_explicit_instance)
from .domset import exact_domset, export_ilp, graph_to_metric
from .elimination import EliminationGraph, KnnQuery, RangeQuery, build_elimination_graph
from .experiment import (ExperimentSpec, SolverLimits, run_to_directory,
                         write_gap_tsv)
from .graphs import DirectedGraph, load_undirected_edges
from .metrics import build_distance_matrix, compute_query_distances
from .plotting import render_gap_svg, render_results_svg

logger = logging.getLogger("pivotlab")


def _add_limit_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--time-budget", type=float, default=None,
                   help="solver wall-clock budget in seconds")
    p.add_argument("--node-budget", type=int, default=None,
                   help="solver node budget (deterministic alternative to --time-budget)")
    p.add_argument("--abs-gap", type=int, default=0, help="stop at this absolute gap")
    p.add_argument("--rel-gap", type=float, default=0.0, help="stop at this relative gap")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pivotlab",
                                 description="Pivot-search optimality laboratory")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="method sweep over k with TSV output")
    run.add_argument("--workload", required=True, help="workload config JSON")
    run.add_argument("--k", default="1,3,5,7,9,11", help="comma-separated k values")
    run.add_argument("--methods", default="optimum,oracle,aesa,iaesa2,gaesa,random")
    run.add_argument("--queries", type=int, default=None,
                     help="override the workload's withheld-query count")
    run.add_argument("--seed", type=int, default=0, help="master seed")
    run.add_argument("--no-upper-bounds", action="store_true")
    _add_limit_args(run)
    run.add_argument("--out", required=True, help="output directory")

    opt = sub.add_parser("optimum", help="exact minimum distance-computation count")
    opt.add_argument("--graph", help="elimination-graph JSON")
    opt.add_argument("--workload", help="workload config JSON")
    opt.add_argument("--query", type=int, default=0, help="withheld query ordinal")
    opt.add_argument("--radius", type=float, default=None)
    opt.add_argument("--k", type=int, default=None)
    opt.add_argument("--no-upper-bounds", action="store_true")
    opt.add_argument("--seed", type=int, default=0)
    _add_limit_args(opt)
    opt.add_argument("--out", required=True, help="output directory")

    red = sub.add_parser("reduce", help="convert between search instances and graphs")
    red.add_argument("direction", choices=["to-domset", "from-domset"])
    red.add_argument("--workload", help="workload config JSON (to-domset)")
    red.add_argument("--explicit", help="explicit instance JSON (to-domset)")
    red.add_argument("--query", type=int, default=0)
    red.add_argument("--radius", type=float, default=None)
    red.add_argument("--k", type=int, default=None)
    red.add_argument("--no-upper-bounds", action="store_true")
    red.add_argument("--seed", type=int, default=0)
    red.add_argument("--graph", help="undirected graph JSON (from-domset)")
    red.add_argument("--out", required=True, help="output file")

    lp = sub.add_parser("export-lp", help="write the covering ILP in LP format")
    lp.add_argument("--graph", required=True, help="elimination-graph JSON")
    lp.add_argument("--out", required=True, help="output .lp file")

    plot = sub.add_parser("plot", help="render a results or gap TSV as SVG")
    plot.add_argument("--input", required=True, help="TSV produced by run/optimum")
    plot.add_argument("--out", required=True, help="output .svg file")

    return ap


def _load_graph_json(path) -> EliminationGraph | DirectedGraph:
    doc = json.loads(Path(path).read_text())
    if "r" in doc:
        return EliminationGraph.from_json(json.dumps(doc))
    return DirectedGraph.from_edges(int(doc["n"]), doc["edges"])


def _instance_graph(args) -> EliminationGraph:
    """Build the elimination graph named by --workload/--explicit + query args."""
    use_upper = not args.no_upper_bounds
    if args.explicit:
        ds, query, radius, doc_k = load_explicit_instance(args.explicit)
        dm = build_distance_matrix(ds)
        qd = compute_query_distances(ds, query)
        if args.k is not None:
            spec = KnnQuery(args.k, use_upper=False)
        elif args.radius is not None:
            spec = RangeQuery(args.radius, use_upper)
        elif doc_k is not None:
            spec = KnnQuery(doc_k, use_upper=False)
        else:
            spec = RangeQuery(radius, use_upper)
        return build_elimination_graph(dm, qd, spec)
    if not args.workload:
        raise ValueError("need --workload, --explicit, or --graph input")
    config = WorkloadConfig.from_json(Path(args.workload).read_text())
    loaded = load_workload(config, base_dir=Path(args.workload).parent,
                           default_seed=args.seed)
    if not loaded.queries:
        raise ValueError("workload withholds no queries; set queries in the config")
    if not 0 <= args.query < len(loaded.queries):
        raise ValueError(f"query ordinal {args.query} out of range")
    ds = loaded.dataset
    dm = build_distance_matrix(ds)
    qd = compute_query_distances(ds, loaded.queries[args.query])
    if args.k is not None:
        # k-NN optimum mapping: radius from the k-th neighbor, no upper bounds.
        spec = KnnQuery(args.k, use_upper=False)
    elif args.radius is not None:
        spec = RangeQuery(args.radius, use_upper)
    elif loaded.fixed_radius is not None:
        spec = RangeQuery(loaded.fixed_radius, use_upper)
    else:
        raise ValueError("need --radius or --k")
    return build_elimination_graph(dm, qd, spec, query_id=str(args.query))


def cmd_run(args) -> int:
    config = WorkloadConfig.from_json(Path(args.workload).read_text())
    spec = ExperimentSpec(
        workload=config,
        k_values=[int(k) for k in args.k.split(",") if k.strip()],
        methods=[m.strip().lower() for m in args.methods.split(",") if m.strip()],
        use_upper=not args.no_upper_bounds,
        master_seed=args.seed,
        limits=SolverLimits(args.node_budget, args.time_budget,
                            args.abs_gap, args.rel_gap),
        query_count=args.queries,
        base_dir=str(Path(args.workload).parent),
    )
    out = run_to_directory(spec, args.out)
    logger.info("wrote %s and %s", out / "results.tsv", out / "raw.tsv")
    return 0


def cmd_optimum(args) -> int:
    if args.graph:
        loaded = _load_graph_json(args.graph)
        graph = loaded.graph if isinstance(loaded, EliminationGraph) else loaded
    else:
        graph = _instance_graph(args).graph
    res = exact_domset(graph, time_budget=args.time_budget,
                       node_budget=args.node_budget,
                       abs_gap=args.abs_gap, rel_gap=args.rel_gap)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "domset.json").write_text(json.dumps({
        "vertices": res.vertices,
        "lower_bound": res.lower_bound,
        "upper_bound": res.upper_bound,
        "proven_optimal": res.proven_optimal,
        "nodes_explored": res.nodes_explored,
    }, sort_keys=True, indent=2) + "\n")
    write_gap_tsv(res.gap_trace, out / "gap.tsv")
    logger.info("bounds [%d, %d] proven=%s nodes=%d", res.lower_bound,
                res.upper_bound, res.proven_optimal, res.nodes_explored)
    return 0


def cmd_reduce(args) -> int:
    if args.direction == "to-domset":
        graph = _instance_graph(args)
        Path(args.out).write_text(graph.to_json() + "\n")
    else:
        if not args.graph:
            raise ValueError("from-domset needs --graph")
        n, edges = load_undirected_edges(Path(args.graph).read_text())
        ds, query, radius = graph_to_metric(n, edges)
        save_explicit_instance(ds.metric.matrix, query, radius, args.out)
    logger.info("wrote %s", args.out)
    return 0


def cmd_export_lp(args) -> int:
    loaded = _load_graph_json(args.graph)
    graph = loaded.graph if isinstance(loaded, EliminationGraph) else loaded
    with open(args.out, "w", encoding="utf-8") as fh:
        export_ilp(graph, fh)
    logger.info("wrote %s", args.out)
    return 0


def cmd_plot(args) -> int:
    header = Path(args.input).read_text(encoding="utf-8").splitlines()
    if not header:
        raise ValueError(f"{args.input}: empty file")
    if header[0].startswith("secs"):
        render_gap_svg(args.input, args.out)
    else:
        render_results_svg(args.input, args.out)
    logger.info("wrote %s", args.out)
    return 0


COMMANDS = {
    "run": cmd_run,
    "optimum": cmd_optimum,
    "reduce": cmd_reduce,
    "export-lp": cmd_export_lp,
    "plot": cmd_plot,
}


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO,
                        format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"pivotlab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Dataset generation, loading, and query withholding.

All stochastic operations use NumPy's PCG64 generator seeded through
``SeedSequence`` with explicit integer entropy, so every dataset and query
sample is reproducible across platforms from the seeds alone.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .domset import graph_to_metric
from .graphs import load_undirected_edges
from .metrics import Dataset, Explicit, Levenshtein, MetricKind, Minkowski


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def gen_uniform_vectors(n: int, d: int, seed: int,
                        metric: MetricKind | None = None) -> Dataset:
    """n vectors with i.i.d. uniform [0, 1) coordinates; Euclidean by default."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    points = _rng(seed).random((n, d))
    return Dataset(points, metric or Minkowski(2.0))


def load_vectors(path, metric: MetricKind | None = None) -> Dataset:
    """One vector per line, whitespace-separated decimals, uniform dimension."""
    rows = []
    dim = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                raise ValueError(f"{path}:{lineno}: empty line")
            if dim is None:
                dim = len(fields)
            elif len(fields) != dim:
                raise ValueError(
                    f"{path}:{lineno}: expected {dim} fields, got {len(fields)}")
            rows.append([float(f) for f in fields])
    if not rows:
        raise ValueError(f"{path}: empty file")
    return Dataset(np.array(rows), metric or Minkowski(2.0))


def load_strings(path) -> Dataset:
    """One string per line (trailing newline stripped); empty lines are errors."""
    objects = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line:
                raise ValueError(f"{path}:{lineno}: empty line")
            objects.append(line)
    if not objects:
        raise ValueError(f"{path}: empty file")
    return Dataset(objects, Levenshtein())


def save_vectors(ds: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for row in ds.objects:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")


def save_strings(ds: Dataset, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for s in ds.objects:
            fh.write(s + "\n")


def withhold_queries(ds: Dataset, count: int | None = None,
                     seed: int | None = None, indices=None):
    """Remove objects from a dataset to serve as benchmark queries.

    Either a seeded sample of ``count`` objects (without replacement) or an
    explicit index list.  Returns (reduced dataset, query objects, withheld
    original indices); remaining objects keep their relative order.
    """
    n = ds.n
    if indices is not None:
        chosen = [int(i) for i in indices]
        if len(set(chosen)) != len(chosen):
            raise ValueError("duplicate withheld indices")
        if any(not 0 <= i < n for i in chosen):
            raise ValueError("withheld index out of range")
    else:
        if count is None:
            raise ValueError("need either a count or explicit indices")
        if not 0 <= count < n:
            raise ValueError(f"query count must be in [0, n), got {count} for n={n}")
        chosen = [] if count == 0 else sorted(
            int(i) for i in _rng(seed or 0).choice(n, size=count, replace=False))
    if len(chosen) >= n:
        raise ValueError("cannot withhold every object")

    keep = [i for i in range(n) if i not in set(chosen)]
    if isinstance(ds.objects, np.ndarray):
        remaining = ds.objects[keep]
        queries = [ds.objects[i] for i in chosen]
    else:
        remaining = [ds.objects[i] for i in keep]
        queries = [ds.objects[i] for i in chosen]
    return Dataset(remaining, ds.metric), queries, chosen


# ---------------------------------------------------------------------------
# Workload configuration

@dataclass
class WorkloadConfig:
    """JSON-serializable description of a dataset plus its benchmark queries."""

    source: dict
    metric: dict = field(default_factory=lambda: {"kind": "minkowski", "p": 2})
    queries: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, text: str) -> "WorkloadConfig":
        doc = json.loads(text)
        return cls(doc["source"], doc.get("metric", {"kind": "minkowski", "p": 2}),
                   doc.get("queries", {}))

    def to_json(self) -> str:
        return json.dumps({"source": self.source, "metric": self.metric,
                           "queries": self.queries}, sort_keys=True)


def parse_metric(doc: dict) -> MetricKind:
    kind = doc.get("kind", "minkowski")
    if kind == "minkowski":
        p = doc.get("p", 2)
        return Minkowski(math.inf if p in ("inf", None) else float(p))
    if kind == "levenshtein":
        return Levenshtein()
    raise ValueError(f"unknown metric kind {kind!r}")


@dataclass
class LoadedWorkload:
    dataset: Dataset
    queries: list
    withheld_indices: list[int]
    fixed_radius: float | None = None  # set for explicit reduced instances


def load_workload(config: WorkloadConfig, base_dir=None,
                  default_seed: int = 0, override_query_count: int | None = None) -> LoadedWorkload:
    """Materialize a workload config into a dataset and its withheld queries."""
    src = config.source
    kind = src.get("kind")
    resolve = (lambda p: str(Path(base_dir) / p)) if base_dir else (lambda p: p)
    if kind == "uniform":
        ds = gen_uniform_vectors(int(src["n"]), int(src["d"]),
                                 int(src.get("seed", default_seed)),
                                 parse_metric(config.metric))
    elif kind == "vector_file":
        ds = load_vectors(resolve(src["path"]), parse_metric(config.metric))
    elif kind == "string_file":
        ds = load_strings(resolve(src["path"]))
    elif kind == "graph_file":
        n, edges = load_undirected_edges(Path(resolve(src["path"])).read_text())
        ds, query_index, radius = graph_to_metric(n, edges)
        return LoadedWorkload(ds, [query_index], [], radius)
    else:
        raise ValueError(f"unknown workload source {kind!r}")

    q = dict(config.queries)
    if override_query_count is not None:
        q = {"count": override_query_count, "seed": q.get("seed")}
    if "indices" in q:
        ds2, queries, withheld = withhold_queries(ds, indices=q["indices"])
    elif q.get("count"):
        seed = q.get("seed")
        ds2, queries, withheld = withhold_queries(
            ds, count=int(q["count"]), seed=int(seed) if seed is not None else default_seed)
    else:
        ds2, queries, withheld = ds, [], []
    return LoadedWorkload(ds2, queries, withheld)


def save_explicit_instance(matrix: np.ndarray, query_index: int, r: float,
                           path, k: int | None = None) -> None:
    """Persist a fully explicit instance (matrix includes the query row)."""
    doc = {"matrix": np.asarray(matrix).tolist(), "query": int(query_index),
           "r": float(r)}
    if k is not None:
        doc["k"] = int(k)
    Path(path).write_text(json.dumps(doc, sort_keys=True))


def load_explicit_instance(path):
    """Load an explicit instance; returns (dataset, query object, r, k)."""
    doc = json.loads(Path(path).read_text())
    matrix = np.asarray(doc["matrix"], dtype=np.float64)
    query = int(doc["query"])
    integer = bool(np.all(matrix == np.round(matrix)))
    objects = [i for i in range(matrix.shape[0]) if i != query]
    ds = Dataset(objects, Explicit(matrix, integer=integer))
    return ds, query, float(doc["r"]), doc.get("k")

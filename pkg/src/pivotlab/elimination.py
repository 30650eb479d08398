"""Elimination graphs: which single distance computation resolves which object.

For a range query with radius r, computing d(q,p) resolves x without touching
it when the single-pivot lower bound excludes x (|d(q,p) - d(p,x)| > r) or,
if upper-bound elimination is enabled, when the single-pivot upper bound
includes it (d(q,p) + d(p,x) <= r).  Listing every such pair as a directed
edge p -> x yields the elimination graph; its minimum dominating set is the
cheapest pivot set that resolves the query.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .graphs import DirectedGraph
from .metrics import DistanceMatrix, QueryDistances, le_eps


@dataclass(frozen=True)
class RangeQuery:
    r: float
    use_upper: bool = True

    def __post_init__(self):
        if not self.r >= 0.0:
            raise ValueError("range radius must be nonnegative")


@dataclass(frozen=True)
class KnnQuery:
    k: int
    # Upper-bound elimination is off by default: that is the variant whose
    # optimum maps cleanly onto a dominating set.
    use_upper: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be positive")


QuerySpec = Union[RangeQuery, KnnQuery]


def eliminates(p: int, x: int, qd: QueryDistances, dm: DistanceMatrix,
               r: float, use_upper: bool) -> bool:
    """True when computing d(q,p) alone resolves x at radius r."""
    if p == x:
        raise ValueError("an object does not eliminate itself")
    eps = dm.eps
    dqp = float(qd.dist[p])
    dpx = float(dm.values[p, x])
    if abs(dqp - dpx) > r + eps:
        return True
    return use_upper and le_eps(dqp + dpx, r, eps)


@dataclass(frozen=True, eq=False)
class EliminationGraph:
    """Directed elimination graph plus the query parameters that produced it."""

    graph: DirectedGraph
    r: float
    use_upper: bool
    query_id: str | None = None
    knn_unique: bool | None = None  # set for kNN-derived radii; None for range

    @property
    def n(self) -> int:
        return self.graph.n

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "r": self.r,
            "use_upper": self.use_upper,
            "edges": self.graph.edges(),
        }
        if self.query_id is not None:
            doc["query_id"] = self.query_id
        if self.knn_unique is not None:
            doc["knn_unique"] = self.knn_unique
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "EliminationGraph":
        doc = json.loads(text)
        graph = DirectedGraph.from_edges(int(doc["n"]), doc["edges"])
        return cls(graph, float(doc["r"]), bool(doc["use_upper"]),
                   doc.get("query_id"), doc.get("knn_unique"))


def knn_radius(qd: QueryDistances, k: int) -> tuple[float, bool]:
    """Distance to the k-th nearest object, plus whether the k-set is unique.

    The result set is ambiguous exactly when the k-th and (k+1)-th smallest
    query distances coincide.
    """
    n = qd.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    ordered = np.sort(qd.dist)
    r = float(ordered[k - 1])
    unique = k == n or float(ordered[k]) > r + qd.eps
    return r, unique


def linear_scan(qd: QueryDistances, r: float, reveal: bool = False) -> list[int]:
    """Ground-truth range result; optionally pays for every distance."""
    if reveal:
        qd.reveal_all()
    eps = qd.eps
    return np.flatnonzero(qd.dist <= r + eps).tolist()


def build_elimination_graph(dm: DistanceMatrix, qd: QueryDistances,
                            spec: QuerySpec, query_id: str | None = None) -> EliminationGraph:
    """Exhaustive listing of single-pivot eliminations for a fully known query.

    For kNN specs the radius is first derived from the query distances; the
    graph then describes the equivalent range problem.
    """
    knn_unique = None
    if isinstance(spec, KnnQuery):
        r, knn_unique = knn_radius(qd, spec.k)
    else:
        r = spec.r
    if not (r >= 0.0 or math.isinf(r)):
        raise ValueError("radius must be nonnegative")
    eps = dm.eps
    lower = np.abs(qd.dist[:, None] - dm.values)
    adj = lower > r + eps
    if spec.use_upper:
        adj |= (qd.dist[:, None] + dm.values) <= r + eps
    np.fill_diagonal(adj, False)
    return EliminationGraph(DirectedGraph(adj), float(r), spec.use_upper,
                            query_id, knn_unique)

"""Metric kinds, distance matrices, query distances, and pivot bounds.

Distances are stored as float64 throughout; integer-valued metrics (edit
distance, explicit integer matrices) embed losslessly and compare exactly
(tolerance 0), while real-valued metrics use the absolute tolerance
``REAL_EPS`` so elimination decisions are reproducible across platforms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.spatial import distance as _scidist

REAL_EPS = 1e-9


def gt_eps(a: float, b: float, eps: float) -> bool:
    """Tolerant strict comparison: a is greater than b beyond noise."""
    return a > b + eps


def le_eps(a: float, b: float, eps: float) -> bool:
    """Tolerant non-strict comparison: a is at most b up to noise."""
    return a <= b + eps


@dataclass(frozen=True)
class Minkowski:
    """L_p metric on real vectors; p >= 1 or math.inf (Chebyshev)."""

    p: float = 2.0

    def __post_init__(self):
        if not self.p >= 1.0:
            raise ValueError(f"Minkowski order must be >= 1, got {self.p}")


@dataclass(frozen=True)
class Levenshtein:
    """Unit-cost edit distance on strings."""


@dataclass(frozen=True, eq=False)
class Explicit:
    """Distances read from a stored matrix; objects are row indices.

    ``integer`` marks matrices whose entries are exact (comparisons use
    tolerance 0 instead of REAL_EPS).
    """

    matrix: np.ndarray
    integer: bool = False

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("explicit metric needs a square matrix")
        object.__setattr__(self, "matrix", m)


MetricKind = Union[Minkowski, Levenshtein, Explicit]


def metric_eps(metric: MetricKind) -> float:
    if isinstance(metric, Levenshtein):
        return 0.0
    if isinstance(metric, Explicit) and metric.integer:
        return 0.0
    return REAL_EPS


def levenshtein_distance(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def minkowski_distance(a: np.ndarray, b: np.ndarray, p: float) -> float:
    diff = np.abs(np.asarray(a, dtype=np.float64) - np.asarray(b, dtype=np.float64))
    if math.isinf(p):
        return float(diff.max()) if diff.size else 0.0
    if p == 1.0:
        return float(diff.sum())
    if p == 2.0:
        return float(np.sqrt(np.square(diff).sum()))
    return float(np.power(np.power(diff, p).sum(), 1.0 / p))


def compute_distance(a, b, metric: MetricKind) -> float:
    """Distance between two objects under the given metric."""
    if isinstance(metric, Minkowski):
        av = np.asarray(a, dtype=np.float64)
        bv = np.asarray(b, dtype=np.float64)
        if av.shape != bv.shape or av.ndim != 1:
            raise ValueError(f"vector dimension mismatch: {av.shape} vs {bv.shape}")
        return minkowski_distance(av, bv, metric.p)
    if isinstance(metric, Levenshtein):
        if not isinstance(a, str) or not isinstance(b, str):
            raise ValueError("edit distance requires string objects")
        return float(levenshtein_distance(a, b))
    if isinstance(metric, Explicit):
        if not isinstance(a, (int, np.integer)) or not isinstance(b, (int, np.integer)):
            raise ValueError("explicit metric requires objects given as matrix indices")
        m = metric.matrix
        if not (0 <= a < m.shape[0] and 0 <= b < m.shape[0]):
            raise ValueError("explicit metric index out of range")
        return float(m[a, b])
    raise TypeError(f"unknown metric kind: {metric!r}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Ordered collection of objects plus the metric they live under.

    Objects are either a (n, d) float array (Minkowski), a list of strings
    (Levenshtein), or a list of matrix indices (Explicit).
    """

    objects: Sequence
    metric: MetricKind

    def __post_init__(self):
        if isinstance(self.metric, Minkowski):
            arr = np.asarray(self.objects, dtype=np.float64)
            if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] < 1:
                raise ValueError("vector dataset must be a non-empty (n, d) array with d >= 1")
            object.__setattr__(self, "objects", arr)
        elif isinstance(self.metric, Levenshtein):
            objs = list(self.objects)
            if not objs or not all(isinstance(o, str) for o in objs):
                raise ValueError("string dataset must be a non-empty list of strings")
            object.__setattr__(self, "objects", objs)
        elif isinstance(self.metric, Explicit):
            objs = [int(o) for o in self.objects]
            if not objs:
                raise ValueError("dataset must be non-empty")
            m = self.metric.matrix.shape[0]
            if any(not 0 <= o < m for o in objs):
                raise ValueError("explicit dataset index out of range")
            object.__setattr__(self, "objects", objs)
        else:
            raise TypeError(f"unknown metric kind: {self.metric!r}")

    @property
    def n(self) -> int:
        return len(self.objects)

    @property
    def eps(self) -> float:
        return metric_eps(self.metric)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric object-object distances with zero diagonal."""

    values: np.ndarray
    eps: float = REAL_EPS

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]


def build_distance_matrix(ds: Dataset) -> DistanceMatrix:
    """All pairwise distances for a dataset."""
    if isinstance(ds.metric, Minkowski):
        x = ds.objects
        p = ds.metric.p
        if math.isinf(p):
            vals = _scidist.cdist(x, x, "chebyshev")
        elif p == 1.0:
            vals = _scidist.cdist(x, x, "cityblock")
        elif p == 2.0:
            vals = _scidist.cdist(x, x, "euclidean")
        else:
            vals = _scidist.cdist(x, x, "minkowski", p=p)
    elif isinstance(ds.metric, Levenshtein):
        n = ds.n
        vals = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                d = levenshtein_distance(ds.objects[i], ds.objects[j])
                vals[i, j] = vals[j, i] = d
    else:
        idx = np.asarray(ds.objects, dtype=np.intp)
        vals = ds.metric.matrix[np.ix_(idx, idx)].copy()
    np.fill_diagonal(vals, 0.0)
    return DistanceMatrix(vals, eps=ds.eps)


@dataclass(eq=False)
class QueryDistances:
    """Distances from one query to every dataset object, with a paid-for mask.

    ``dist`` is fully populated up front (the offline view); ``revealed``
    tracks which entries a simulation has actually paid a distance
    computation for, and is owned by a single run.
    """

    query: object
    dist: np.ndarray
    revealed: np.ndarray = None
    eps: float = REAL_EPS

    def __post_init__(self):
        self.dist = np.asarray(self.dist, dtype=np.float64)
        if self.revealed is None:
            self.revealed = np.zeros(self.dist.shape[0], dtype=bool)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def computations(self) -> int:
        return int(self.revealed.sum())

    def reveal(self, i: int) -> float:
        self.revealed[i] = True
        return float(self.dist[i])

    def reveal_all(self) -> None:
        self.revealed[:] = True

    def fresh(self) -> "QueryDistances":
        """Same distances, nothing revealed; for starting a new run."""
        return QueryDistances(self.query, self.dist, None, self.eps)


def compute_query_distances(ds: Dataset, query) -> QueryDistances:
    if isinstance(ds.metric, Minkowski):
        q = np.asarray(query, dtype=np.float64)
        if q.ndim != 1 or q.shape[0] != ds.objects.shape[1]:
            raise ValueError("query dimension does not match dataset")
        p = ds.metric.p
        diff = np.abs(ds.objects - q[None, :])
        if math.isinf(p):
            dist = diff.max(axis=1)
        elif p == 1.0:
            dist = diff.sum(axis=1)
        elif p == 2.0:
            dist = np.sqrt(np.square(diff).sum(axis=1))
        else:
            dist = np.power(np.power(diff, p).sum(axis=1), 1.0 / p)
    else:
        dist = np.array([compute_distance(query, o, ds.metric) for o in ds.objects])
    return QueryDistances(query, dist, None, ds.eps)


@dataclass
class Bounds:
    """Per-object lower/upper bounds on the query distance for a pivot set."""

    lo: np.ndarray
    hi: np.ndarray


def pivot_bounds(pivots, qd: QueryDistances, dm: DistanceMatrix, x: int):
    """Lower/upper bound on the query-object distance from revealed pivots.

    With no pivots the bounds are (0, inf).  Every pivot must have a revealed
    query distance; the bound from pivot p is |d(q,p) - d(p,x)| below and
    d(q,p) + d(p,x) above.
    """
    pivots = list(pivots)
    if not pivots:
        return 0.0, math.inf
    for p in pivots:
        if not qd.revealed[p]:
            raise ValueError(f"pivot {p} has no revealed query distance")
    dq = qd.dist[pivots]
    dx = dm.values[pivots, x]
    return float(np.abs(dq - dx).max()), float((dq + dx).min())


def bounds_table(pivots, qd: QueryDistances, dm: DistanceMatrix) -> Bounds:
    """Vectorized pivot bounds for every object at once."""
    pivots = list(pivots)
    n = dm.n
    if not pivots:
        return Bounds(np.zeros(n), np.full(n, math.inf))
    for p in pivots:
        if not qd.revealed[p]:
            raise ValueError(f"pivot {p} has no revealed query distance")
    dq = qd.dist[pivots][:, None]
    dx = dm.values[pivots, :]
    return Bounds(np.abs(dq - dx).max(axis=0), (dq + dx).min(axis=0))


def adversarial_metrics(dm: DistanceMatrix, q: int, z: int):
    """Tight bound-achieving variants of a metric, for the pair (q, z).

    Returns two matrices equal to ``dm`` except that the (q, z) entry is
    replaced by the best lower bound (first) and the best upper bound
    (second) obtainable from all remaining points as pivots.  The upper
    replacement is always a metric; the lower one may be a pseudometric
    (it can make two distinct points coincide).
    """
    n = dm.n
    pivots = [i for i in range(n) if i not in (q, z)]
    if not pivots:
        raise ValueError("need at least one pivot point besides q and z")
    dq = dm.values[q, pivots]
    dz = dm.values[pivots, z]
    lo = float(np.abs(dq - dz).max())
    hi = float((dq + dz).min())
    d1 = dm.values.copy()
    d2 = dm.values.copy()
    if q != z:
        d1[q, z] = d1[z, q] = lo
        d2[q, z] = d2[z, q] = hi
    return DistanceMatrix(d1, eps=dm.eps), DistanceMatrix(d2, eps=dm.eps)


@dataclass(frozen=True)
class MetricReport:
    ok: bool
    axiom: str | None = None
    witness: tuple | None = None


def verify_metric(dm: DistanceMatrix, tol: float | None = None,
                  check_identity: bool = False) -> MetricReport:
    """Check metric axioms, returning the first violation found.

    Checks symmetry, zero diagonal, nonnegativity, and the full triangle
    inequality (witness (i, j, k) means d[i,k] > d[i,j] + d[j,k]).  Identity
    of indiscernibles is optional: pseudometrics pass by default.
    """
    if tol is None:
        tol = dm.eps
    d = dm.values
    n = dm.n

    asym = np.argwhere(np.abs(d - d.T) > tol)
    if asym.size:
        i, j = map(int, asym[0])
        return MetricReport(False, "symmetry", (i, j))

    diag = np.flatnonzero(np.abs(np.diagonal(d)) > tol)
    if diag.size:
        i = int(diag[0])
        return MetricReport(False, "zero_diagonal", (i,))

    neg = np.argwhere(d < -tol)
    if neg.size:
        i, j = map(int, neg[0])
        return MetricReport(False, "nonnegativity", (i, j))

    for i in range(n):
        # d[i,k] <= d[i,j] + d[j,k] for all j, k
        viol = d[i][None, :] > d[i][:, None] + d + tol
        if viol.any():
            j, k = map(int, np.argwhere(viol)[0])
            return MetricReport(False, "triangle", (i, j, k))

    if check_identity:
        off = np.abs(d) <= tol
        np.fill_diagonal(off, False)
        hits = np.argwhere(off)
        if hits.size:
            i, j = map(int, hits[0])
            return MetricReport(False, "identity", (i, j))

    return MetricReport(True)

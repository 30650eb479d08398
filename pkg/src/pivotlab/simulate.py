"""Online pivot-selection simulations that count distance computations.

All strategies run the same loop: pick an unresolved object, pay for its
query distance, tighten every remaining object's lower/upper bounds, and
resolve whatever the bounds now settle.  Only the pivot choice differs.
Non-oracle strategies may consult revealed query distances, the object-object
matrix, and the search radius; the oracle strategy additionally reads
unrevealed query distances (without paying for them) to measure the true
elimination power of each candidate.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .elimination import KnnQuery, RangeQuery, knn_radius
from .metrics import DistanceMatrix, QueryDistances

METHOD_NAMES = ("random", "aesa", "iaesa2", "gaesa", "oracle")


@dataclass
class SimStep:
    pivot: int
    excluded: list[int] = field(default_factory=list)
    included: list[int] = field(default_factory=list)


@dataclass
class SimTrace:
    """Full record of one simulated search."""

    strategy: str
    mode: dict
    pivots: list[int]
    computations: int
    result: list[int]
    steps: list[SimStep]

    def to_json(self) -> str:
        return json.dumps({
            "strategy": self.strategy,
            "mode": self.mode,
            "pivots": self.pivots,
            "computations": self.computations,
            "result": self.result,
            "steps": [
                {"pivot": s.pivot, "excluded": s.excluded, "included": s.included}
                for s in self.steps
            ],
        }, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SimTrace":
        doc = json.loads(text)
        steps = [SimStep(s["pivot"], list(s["excluded"]), list(s["included"]))
                 for s in doc["steps"]]
        return cls(doc["strategy"], doc["mode"], list(doc["pivots"]),
                   int(doc["computations"]), list(doc["result"]), steps)


# ---------------------------------------------------------------------------
# Standalone heuristic scores (the loop uses vectorized equivalents).

def aesa_score(x: int, pivots, qd: QueryDistances, dm: DistanceMatrix) -> float:
    """Sum of single-pivot lower bounds on d(q,x); 0 with no pivots."""
    return float(sum(abs(qd.dist[p] - dm.values[p, x]) for p in pivots))


def gaesa_score(x: int, pivots, remaining, qd: QueryDistances,
                dm: DistanceMatrix) -> float:
    """AESA score divided by the summed distance to remaining objects.

    Falls back to the plain AESA score when every remaining object coincides
    with x (zero denominator).
    """
    num = aesa_score(x, pivots, qd, dm)
    den = float(sum(dm.values[x, u] for u in remaining if u != x))
    return num / den if den > 0.0 else num


def _footrule(order_a: list[int], order_b: list[int]) -> int:
    pos_b = {p: i for i, p in enumerate(order_b)}
    return sum(abs(i - pos_b[p]) for i, p in enumerate(order_a))


def iaesa2_order(remaining, pivots, qd: QueryDistances,
                 dm: DistanceMatrix) -> list[int]:
    """Candidates ranked by pivot-permutation similarity to the query.

    Each candidate orders the pivots by distance to itself; the query orders
    them by revealed distance.  Lower Spearman footrule between the two
    orders ranks first; ties break by AESA score, then index.  With no pivots
    the order is simply by index.
    """
    remaining = sorted(remaining)
    pivots = sorted(pivots)
    if not pivots:
        return remaining
    query_order = sorted(pivots, key=lambda p: (qd.dist[p], p))

    def key(x: int):
        mine = sorted(pivots, key=lambda p: (dm.values[p, x], p))
        return (_footrule(mine, query_order), aesa_score(x, pivots, qd, dm), x)

    return sorted(remaining, key=key)


def oracle_power(p: int, remaining, qd: QueryDistances, dm: DistanceMatrix,
                 r: float, use_upper: bool) -> int:
    """How many remaining objects selecting p resolves, itself included.

    Reads true query distances without charging for them (oracle privilege).
    """
    eps = dm.eps
    dqp = float(qd.dist[p])
    power = 1
    for x in remaining:
        if x == p:
            continue
        dpx = float(dm.values[p, x])
        if abs(dqp - dpx) > r + eps or (use_upper and dqp + dpx <= r + eps):
            power += 1
    return power


# ---------------------------------------------------------------------------
# Strategies

class _RunState:
    """Shared per-run arrays the strategies select from."""

    def __init__(self, dm: DistanceMatrix, qd: QueryDistances, r: float | None,
                 use_upper: bool):
        self.dm = dm
        self.qd = qd
        self.n = dm.n
        self.eps = dm.eps
        self.r = r  # range radius, or the oracle's true-kNN radius in kNN mode
        self.use_upper = use_upper
        self.candidates = np.ones(self.n, dtype=bool)
        self.pivots: list[int] = []
        self.lo = np.zeros(self.n)
        self.hi = np.full(self.n, math.inf)
        self.score_sums = np.zeros(self.n)  # running AESA sums

    def reveal(self, p: int) -> float:
        d = self.qd.reveal(p)
        row = self.dm.values[p]
        np.maximum(self.lo, np.abs(d - row), out=self.lo)
        np.minimum(self.hi, d + row, out=self.hi)
        self.score_sums += np.abs(d - row)
        self.pivots.append(p)
        return d


class PivotStrategy:
    name = "base"

    def on_start(self, state: _RunState) -> None:
        pass

    def on_removed(self, state: _RunState, removed: np.ndarray) -> None:
        pass

    def select(self, state: _RunState) -> int:
        raise NotImplementedError


class RandomStrategy(PivotStrategy):
    name = "random"

    def __init__(self, seed: int = 0):
        self.seed = int(seed)
        self._rng = None

    def on_start(self, state):
        self._rng = np.random.Generator(np.random.PCG64(self.seed))

    def select(self, state):
        cand = np.flatnonzero(state.candidates)
        return int(cand[self._rng.integers(len(cand))])


class AesaStrategy(PivotStrategy):
    """Pick the candidate with the smallest sum of lower bounds.

    The first pick (all scores zero) is the lowest index, or a seeded random
    choice when ``first_seed`` is given.
    """

    name = "aesa"

    def __init__(self, first_seed: int | None = None):
        self.first_seed = first_seed

    def select(self, state):
        cand = np.flatnonzero(state.candidates)
        if not state.pivots and self.first_seed is not None:
            rng = np.random.Generator(np.random.PCG64(self.first_seed))
            return int(cand[rng.integers(len(cand))])
        return int(cand[np.argmin(state.score_sums[cand])])


class GAesaStrategy(PivotStrategy):
    """AESA score scaled down by how far a candidate is from what remains."""

    name = "gaesa"

    def __init__(self):
        self._den = None

    def on_start(self, state):
        self._den = state.dm.values.sum(axis=1)

    def on_removed(self, state, removed):
        if removed.size:
            self._den = self._den - state.dm.values[:, removed].sum(axis=1)

    def select(self, state):
        cand = np.flatnonzero(state.candidates)
        den = self._den[cand]
        num = state.score_sums[cand]
        scores = np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), num)
        return int(cand[np.argmin(scores)])


class IAesa2Strategy(PivotStrategy):
    """Rank candidates by Spearman footrule between pivot permutations."""

    name = "iaesa2"

    def select(self, state):
        cand = np.flatnonzero(state.candidates)
        pivots = sorted(state.pivots)
        if not pivots:
            return int(cand[0])
        sub = state.dm.values[np.ix_(cand, pivots)]
        # Stable argsort over index-ordered pivot columns: distance ties break
        # by ascending pivot index, matching iaesa2_order.
        order = np.argsort(sub, axis=1, kind="stable")
        ranks = np.empty_like(order)
        rows = np.arange(cand.size)[:, None]
        ranks[rows, order] = np.arange(len(pivots))[None, :]
        qorder = np.argsort(state.qd.dist[pivots], kind="stable")
        qranks = np.empty(len(pivots), dtype=order.dtype)
        qranks[qorder] = np.arange(len(pivots))
        foot = np.abs(ranks - qranks[None, :]).sum(axis=1)
        sums = state.score_sums[cand]
        best = np.lexsort((cand, sums, foot))[0]
        return int(cand[best])


class OracleStrategy(PivotStrategy):
    """Pick the candidate with the highest true elimination power."""

    name = "oracle"

    def select(self, state):
        cand = np.flatnonzero(state.candidates)
        sub = state.dm.values[np.ix_(cand, cand)]
        dq = state.qd.dist[cand]  # oracle privilege: true, uncounted values
        elim = np.abs(dq[:, None] - sub) > state.r + state.eps
        if state.use_upper:
            elim |= (dq[:, None] + sub) <= state.r + state.eps
        np.fill_diagonal(elim, False)
        power = elim.sum(axis=1)
        return int(cand[np.argmax(power)])


def make_strategy(name: str, seed: int = 0) -> PivotStrategy:
    name = name.lower()
    if name == "random":
        return RandomStrategy(seed)
    if name == "aesa":
        return AesaStrategy()
    if name == "gaesa":
        return GAesaStrategy()
    if name == "iaesa2":
        return IAesa2Strategy()
    if name == "oracle":
        return OracleStrategy()
    raise ValueError(f"unknown strategy {name!r}; expected one of {METHOD_NAMES}")


# ---------------------------------------------------------------------------
# Search loops

def run_range_search(strategy: PivotStrategy, dm: DistanceMatrix,
                     qd: QueryDistances, r: float,
                     use_upper: bool = True) -> SimTrace:
    """Simulate a range search, counting one computation per selected pivot.

    Each round the strategy picks a pivot from the unresolved pool; the pivot
    joins the result if within range, objects whose lower bound now exceeds r
    are excluded, and (when ``use_upper``) objects whose upper bound drops to
    at most r join the result without their distance ever being computed.
    """
    if qd.revealed.any():
        raise ValueError("query distances already partially revealed; use a fresh mask")
    state = _RunState(dm, qd, r, use_upper)
    strategy.on_start(state)
    eps = state.eps
    in_result = np.zeros(state.n, dtype=bool)
    steps: list[SimStep] = []

    while state.candidates.any():
        p = strategy.select(state)
        d = state.reveal(p)
        if d <= r + eps:
            in_result[p] = True
        state.candidates[p] = False
        excluded = state.candidates & (state.lo > r + eps)
        state.candidates[excluded] = False
        included = np.zeros(state.n, dtype=bool)
        if use_upper:
            included = state.candidates & (state.hi <= r + eps)
            in_result[included] = True
            state.candidates[included] = False
        removed = np.concatenate([[p], np.flatnonzero(excluded),
                                  np.flatnonzero(included)])
        strategy.on_removed(state, removed)
        steps.append(SimStep(p, np.flatnonzero(excluded).tolist(),
                             np.flatnonzero(included).tolist()))

    return SimTrace(strategy.name,
                    {"mode": "range", "r": r, "use_upper": use_upper},
                    state.pivots, len(state.pivots),
                    np.flatnonzero(in_result).tolist(), steps)


def _knn_settled(state: _RunState, k: int, use_upper: bool):
    """Try to certify a k-set from the current bounds.

    Looks for a threshold t such that at most k objects could still be
    closer than t (lower bound below t) and at least k objects are known to
    be within t (upper bound at most t; revealed only when upper-bound
    settling is off).  Returns the certified member list or None.
    """
    eps = state.eps
    if use_upper:
        u_eff = state.hi
    else:
        u_eff = np.where(state.qd.revealed, state.qd.dist, math.inf)
    finite = u_eff[np.isfinite(u_eff)]
    if finite.size < k:
        return None
    lo = state.lo
    for t in np.unique(finite):
        members_ok = u_eff <= t + eps
        if int(members_ok.sum()) < k:
            continue
        must_include = lo < t - eps
        n_must = int(must_include.sum())
        if n_must > k:
            return None  # grows with t; no larger threshold can work
        if np.any(must_include & ~members_ok):
            continue
        chosen = np.flatnonzero(must_include).tolist()
        for x in np.flatnonzero(members_ok & ~must_include):
            if len(chosen) >= k:
                break
            chosen.append(int(x))
        if len(chosen) == k:
            return sorted(chosen)
    return None


def run_knn_search(strategy: PivotStrategy, dm: DistanceMatrix,
                   qd: QueryDistances, k: int,
                   use_upper: bool = True) -> SimTrace:
    """Simulate a kNN search.

    The run stops as soon as some k-element set is certified: every member's
    settled distance or upper bound is at most every non-member's lower bound
    (non-strictly, so ties are permitted).  Candidates are pruned from the
    pivot pool once their lower bound exceeds the current k-th smallest upper
    bound; with ``use_upper`` result members may be settled by their upper
    bounds alone, without their distances ever being computed.
    """
    n = dm.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    if qd.revealed.any():
        raise ValueError("query distances already partially revealed; use a fresh mask")
    true_radius, _ = knn_radius(qd, k)  # read only by the oracle strategy
    state = _RunState(dm, qd, true_radius, use_upper)
    strategy.on_start(state)
    eps = state.eps
    steps: list[SimStep] = []
    result = _knn_settled(state, k, use_upper)

    while result is None:
        if not state.candidates.any():
            raise AssertionError("ran out of candidates before certifying a k-set")
        p = strategy.select(state)
        d = state.reveal(p)
        state.lo[p] = state.hi[p] = d
        state.candidates[p] = False
        kth_upper = np.partition(state.hi, k - 1)[k - 1]
        pruned = state.candidates & (state.lo > kth_upper + eps)
        state.candidates[pruned] = False
        removed = np.concatenate([[p], np.flatnonzero(pruned)])
        strategy.on_removed(state, removed)
        steps.append(SimStep(p, np.flatnonzero(pruned).tolist(), []))
        result = _knn_settled(state, k, use_upper)

    settled_unseen = [x for x in result if not qd.revealed[x]]
    if steps and settled_unseen:
        steps[-1].included = settled_unseen

    return SimTrace(strategy.name, {"mode": "knn", "k": k, "use_upper": use_upper},
                    state.pivots, len(state.pivots), result, steps)

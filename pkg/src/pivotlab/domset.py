"""Directed minimum dominating set: greedy, brute force, exact anytime solver.

A vertex set D dominates the graph when every vertex outside D has an
in-neighbor in D.  On elimination graphs the domination number equals the
minimum number of distance computations that resolves the query, so this
module provides the exact baseline the pivot heuristics are measured against.
"""
from __future__ import annotations

import heapq
import itertools
import time
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

from . import kernels
from ._bitset import (bits_of, empty_mask, pack_indices, popcount, set_bit,
                      test_bit, unpack_to_bool)
from .graphs import DirectedGraph
from .metrics import Dataset, Explicit

BRUTE_FORCE_LIMIT = 20


@dataclass
class DomSetResult:
    """Dominating set plus anytime bounds.

    ``gap_trace`` records (elapsed seconds, lower, upper) at every bound or
    incumbent improvement; lower values never decrease and upper values never
    increase along the trace.  ``upper_bound`` always equals the size of
    ``vertices``.
    """

    vertices: list[int]
    lower_bound: int
    upper_bound: int
    proven_optimal: bool
    gap_trace: list[tuple[float, int, int]] = field(default_factory=list)
    nodes_explored: int = 0

    @property
    def gamma(self) -> int:
        """The domination number; only meaningful when proven optimal."""
        return self.upper_bound


def verify_domination(g: DirectedGraph, vertices: Iterable[int]) -> bool:
    covered = empty_mask(g.n)
    for v in vertices:
        covered |= g.out_closed[v]
    return bool(np.array_equal(covered, g.full))


def greedy_domset(g: DirectedGraph) -> tuple[list[int], list[int]]:
    """Greedy approximation: repeatedly pick the unresolved vertex covering
    the most unresolved vertices (itself included), lowest index on ties.

    Returns the selection order and the number of vertices each pick resolved.
    Within a factor of ln(n) + 1 of the optimum.
    """
    res = kernels.greedy_cover(g.out_closed, g.full, g.full, True)
    assert res is not None  # candidates cover themselves, so progress is guaranteed
    return res


def brute_force_domset(g: DirectedGraph) -> DomSetResult:
    """Exhaustive oracle: smallest dominating set, lexicographically first
    among minimum-size sets.  Guarded to n <= 20."""
    n = g.n
    if n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force is limited to n <= {BRUTE_FORCE_LIMIT}, got {n}")
    closed = [0] * n
    for v in range(n):
        acc = 1 << v
        for x in g.out(v):
            acc |= 1 << x
        closed[v] = acc
    all_bits = (1 << n) - 1
    checked = 0
    for size in range(1, n + 1):
        for combo in itertools.combinations(range(n), size):
            checked += 1
            acc = 0
            for v in combo:
                acc |= closed[v]
            if acc == all_bits:
                return DomSetResult(list(combo), size, size, True,
                                    [(0.0, size, size)], checked)
    raise AssertionError("unreachable: the full vertex set always dominates")


class _Node:
    __slots__ = ("lb", "seq", "chosen", "dominated", "banned")

    def __init__(self, lb, seq, chosen, dominated, banned):
        self.lb = lb
        self.seq = seq
        self.chosen = chosen
        self.dominated = dominated
        self.banned = banned

    def __lt__(self, other):
        return (self.lb, self.seq) < (other.lb, other.seq)


def exact_domset(g: DirectedGraph, time_budget: float | None = None,
                 node_budget: int | None = None, abs_gap: int = 0,
                 rel_gap: float = 0.0) -> DomSetResult:
    """Anytime branch and bound for the directed minimum dominating set.

    Bounds per subproblem: a greedy completion gives the upper bound, a
    packing of undominated vertices with pairwise-disjoint candidate-dominator
    sets gives the lower bound, and any vertex left with a single candidate
    dominator is forced.  Branching picks an undominated vertex with the
    fewest candidate dominators and tries each candidate, best coverage
    first; candidates already tried in a sibling are banned in later branches
    so no subproblem is visited twice.

    Nodes are expanded in best-first (lowest lower bound) order, so the
    global lower bound rises monotonically while incumbents push the upper
    bound down -- hitting a budget still yields valid bounds.  With no limits
    the search always terminates with a proven optimum.
    """
    t0 = time.perf_counter()
    n = g.n
    out_closed = g.out_closed
    in_closed = g.in_closed
    full = g.full

    best_set: list[int] | None = None
    best_ub = n + 1
    global_lb = 0
    trace: list[tuple[float, int, int]] = []
    nodes_explored = 0
    seq = itertools.count()

    def record():
        cur_lb = min(global_lb, best_ub)
        if not trace or (trace[-1][1], trace[-1][2]) != (cur_lb, best_ub):
            trace.append((time.perf_counter() - t0, cur_lb, best_ub))

    def gap_target_met() -> bool:
        gap = best_ub - min(global_lb, best_ub)
        if gap <= abs_gap:
            return True
        return best_ub > 0 and gap / best_ub <= rel_gap

    def make_node(chosen: tuple, dominated, banned, parent_lb: int):
        """Propagate forced picks, bound the subproblem, update the incumbent.

        Returns a heap node, or None when the subproblem is infeasible,
        cannot beat the incumbent, or is already solved exactly.
        """
        nonlocal best_set, best_ub
        allowed = ~banned
        avail = kernels.cover_counts(in_closed, allowed)
        while True:
            undominated = full & ~dominated
            if not popcount(undominated):
                break
            und_bool = unpack_to_bool(undominated, n)
            und_avail = np.where(und_bool, avail, np.iinfo(np.int64).max)
            if int(und_avail.min()) == 0:
                return None  # some vertex has no remaining candidate dominator
            singles = np.flatnonzero(und_bool & (avail == 1))
            if singles.size == 0:
                break
            for v in singles:
                if not test_bit(dominated, int(v)):
                    row = in_closed[int(v)] & allowed
                    forced = bits_of(row, n)[0]
                    chosen = chosen + (forced,)
                    dominated = dominated | out_closed[forced]

        undominated = full & ~dominated
        if not popcount(undominated):
            if len(chosen) < best_ub:
                best_set = sorted(chosen)
                best_ub = len(chosen)
                record()
            return None

        pack = kernels.packing_bound(in_closed, undominated, allowed)
        if pack < 0:
            return None
        lb = max(len(chosen) + pack, parent_lb)

        greedy = kernels.greedy_cover(out_closed, undominated, allowed, False)
        if greedy is None:
            return None
        picks, _ = greedy
        if len(chosen) + len(picks) < best_ub:
            best_set = sorted(chosen + tuple(picks))
            best_ub = len(chosen) + len(picks)
            record()

        if lb >= best_ub:
            return None  # cannot strictly improve on the incumbent
        return _Node(lb, next(seq), chosen, dominated, banned)

    root = make_node((), empty_mask(n), empty_mask(n), 0)
    if best_set is None:
        # Defensive: the greedy completion above always sets an incumbent.
        picks, _ = greedy_domset(g)
        best_set = sorted(picks)
        best_ub = len(picks)
    if root is None:
        global_lb = best_ub
        record()
        return DomSetResult(best_set, best_ub, best_ub, True, trace, 0)
    global_lb = root.lb
    record()

    heap = [root]
    proven = False
    while heap:
        if node_budget is not None and nodes_explored >= node_budget:
            break
        if time_budget is not None and time.perf_counter() - t0 > time_budget:
            break
        if gap_target_met():
            break
        node = heapq.heappop(heap)
        if node.lb >= best_ub:
            global_lb = best_ub
            record()
            proven = True
            break
        if node.lb > global_lb:
            global_lb = node.lb
            record()
        nodes_explored += 1

        undominated = full & ~node.dominated
        allowed = ~node.banned
        avail = kernels.cover_counts(in_closed, allowed)
        und_bool = unpack_to_bool(undominated, n)
        und_avail = np.where(und_bool, avail, np.iinfo(np.int64).max)
        branch_v = int(np.argmin(und_avail))  # fewest candidates, lowest index

        cand_words = in_closed[branch_v] & allowed
        candidates = bits_of(cand_words, n)
        coverage = kernels.cover_counts(out_closed, undominated)
        candidates.sort(key=lambda c: (-int(coverage[c]), c))

        banned = node.banned
        for i, c in enumerate(candidates):
            if i > 0:
                banned = banned.copy()
                set_bit(banned, candidates[i - 1])
            child = make_node(node.chosen + (c,),
                              node.dominated | out_closed[c], banned, node.lb)
            if child is not None:
                heapq.heappush(heap, child)
    else:
        global_lb = best_ub
        record()
        proven = True

    if proven:
        global_lb = best_ub
    record()
    return DomSetResult(best_set, min(global_lb, best_ub), best_ub,
                        global_lb >= best_ub, trace, nodes_explored)


def export_ilp(g: DirectedGraph, sink: IO[str]) -> None:
    """Write the covering integer program for the graph in LP text format.

    One binary variable per vertex; vertex v's constraint requires v itself
    or one of its in-neighbors to be picked.  Output is byte-stable for a
    given graph (fixed ordering, wrapped long lines).
    """

    def write_expr(prefix: str, terms: list[str], suffix: str = "") -> None:
        line = prefix
        for i, term in enumerate(terms):
            piece = term if i == 0 else f" + {term}"
            if len(line) + len(piece) > 200:
                sink.write(line + "\n")
                line = "   " + piece.lstrip()
            else:
                line += piece
        sink.write(line + suffix + "\n")

    sink.write("Minimize\n")
    write_expr(" obj: ", [f"x{v}" for v in range(g.n)])
    sink.write("Subject To\n")
    for v in range(g.n):
        terms = [f"x{v}"] + [f"x{u}" for u in g.in_neighbors(v)]
        write_expr(f" c{v}: ", terms, " >= 1")
    sink.write("Binary\n")
    for v in range(g.n):
        sink.write(f" x{v}\n")
    sink.write("End\n")


def graph_to_metric(n: int, edges: Iterable[tuple[int, int]]):
    """Encode an undirected graph as a metric range-search instance.

    Distances: 0 on the diagonal, 1 across graph edges, 2 otherwise, with the
    query at distance 2 from everything.  At any radius below 1 a pivot
    eliminates exactly its graph neighbors, so the elimination graph's closed
    neighborhoods coincide with the input graph's and dominating sets map
    one-to-one.  Returns (dataset, query index, radius); the radius is fixed
    at 1/2.
    """
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    m = np.full((n + 1, n + 1), 2.0)
    np.fill_diagonal(m, 0.0)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u != v:
            m[u, v] = m[v, u] = 1.0
    ds = Dataset(list(range(n)), Explicit(m, integer=True))
    return ds, n, 0.5


def knn_hardness_instance(n: int, edges: Iterable[tuple[int, int]]):
    """Encode an undirected graph as a 1-NN instance.

    Extends the range encoding with a helper object that is the query's
    unique nearest neighbor.  The helper is positioned so that it neither
    eliminates nor is eliminated by any vertex at the 1-NN radius: it must be
    examined itself, and the rest of the search is exactly the range problem
    on the original graph.  The optimal number of distance computations is
    therefore the graph's domination number plus one.

    Returns (dataset, query index, k=1); objects 0..n-1 are the vertices and
    object n is the helper.
    """
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    helper, query = n, n + 1
    m = np.full((n + 2, n + 2), 2.0)
    np.fill_diagonal(m, 0.0)
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u != v:
            m[u, v] = m[v, u] = 1.0
    # Helper-vertex distance sits strictly between 2 - r and 2r for r = 3/4,
    # which keeps it mutually non-eliminating with every vertex while the
    # triangle inequality still holds with slack.
    m[helper, :] = m[:, helper] = 1.375
    m[query, :n] = m[:n, query] = 2.0
    m[query, helper] = m[helper, query] = 0.75
    m[helper, helper] = m[query, query] = 0.0
    ds = Dataset(list(range(n + 1)), Explicit(m))
    return ds, query, 1


def graph_stats(g: DirectedGraph) -> dict:
    """Size, max closed out-degree, and the number of forced picks
    (vertices nothing else can resolve)."""
    out_deg = g.out_degrees_closed()
    in_deg = g.in_degrees()
    return {
        "n": g.n,
        "edge_count": g.edge_count,
        "max_closed_out_degree": int(out_deg.max()),
        "in_isolated": int((in_deg == 0).sum()),
    }

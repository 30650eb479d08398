"""Pure-NumPy dominating-set kernels (fallback for the compiled backend).

Semantics here are the reference: the Cython backend in ``_ckernels.pyx``
must produce bit-identical picks, counts, and bounds.  All ties break toward
the lowest vertex index.
"""
from __future__ import annotations

import numpy as np

from ._bitset import popcount, popcount_rows, unpack_to_bool

BACKEND = "python"


def cover_counts(cover: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Per-row popcount of ``cover[v] & mask``."""
    return popcount_rows(np.bitwise_and(cover, mask[None, :]))


def greedy_cover(cover, universe, allowed, restrict_to_universe):
    """Greedy covering of ``universe`` with rows of ``cover``.

    Candidates are the vertices in ``allowed`` (restricted to the still
    uncovered universe when ``restrict_to_universe``).  Returns
    ``(picks, covered_counts)`` or ``None`` when no candidate makes progress.
    """
    n = cover.shape[0]
    uni = universe.copy()
    picks: list[int] = []
    counts: list[int] = []
    allowed_bool = unpack_to_bool(allowed, n)
    while popcount(uni):
        scores = popcount_rows(np.bitwise_and(cover, uni[None, :]))
        if restrict_to_universe:
            cand = allowed_bool & unpack_to_bool(uni, n)
        else:
            cand = allowed_bool
        scores = np.where(cand, scores, -1)
        best = int(np.argmax(scores))  # first max = lowest index
        if scores[best] <= 0:
            return None
        picks.append(best)
        counts.append(int(scores[best]))
        uni &= ~cover[best]
    return picks, counts


def packing_bound(in_cover, universe, allowed):
    """Count universe vertices with pairwise-disjoint allowed dominator sets.

    Each counted vertex needs a distinct dominator, so the result lower-bounds
    the number of additional picks.  Returns -1 when some universe vertex has
    no allowed dominator at all (infeasible state).
    """
    n = in_cover.shape[0]
    avail = np.bitwise_and(in_cover, allowed[None, :])
    need = np.flatnonzero(unpack_to_bool(universe, n))
    if need.size == 0:
        return 0
    counts = popcount_rows(avail[need])
    if int(counts.min()) == 0:
        return -1
    order = need[np.argsort(counts, kind="stable")]
    used = np.zeros_like(universe)
    packed = 0
    for v in order:
        row = avail[v]
        if not np.any(np.bitwise_and(row, used)):
            packed += 1
            used |= row
    return packed

# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled dominating-set kernels over packed 64-bit bitsets.

Mirrors ``_kernels_py`` exactly (same picks, same tie-breaking, same
infeasibility signalling); only the inner loops are in C.
"""

import numpy as np

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define PL_POPCNT64(x) __builtin_popcountll(x)
    #else
    static inline int PL_POPCNT64(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; ++c; }
        return c;
    }
    #endif
    """
    int PL_POPCNT64(unsigned long long x) nogil

ctypedef unsigned long long u64

BACKEND = "compiled"


cdef inline long long _row_count(const u64[:, ::1] mat, Py_ssize_t row,
                                 const u64[::1] mask, Py_ssize_t words) nogil:
    cdef long long total = 0
    cdef Py_ssize_t w
    for w in range(words):
        total += PL_POPCNT64(mat[row, w] & mask[w])
    return total


def cover_counts(const u64[:, ::1] cover, const u64[::1] mask):
    """Per-row popcount of ``cover[v] & mask``."""
    cdef Py_ssize_t n = cover.shape[0]
    cdef Py_ssize_t words = cover.shape[1]
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] view = out
    cdef Py_ssize_t v
    with nogil:
        for v in range(n):
            view[v] = _row_count(cover, v, mask, words)
    return out


def greedy_cover(const u64[:, ::1] cover, universe, allowed,
                 bint restrict_to_universe):
    """Greedy covering; see the Python backend for the contract."""
    cdef Py_ssize_t n = cover.shape[0]
    cdef Py_ssize_t words = cover.shape[1]
    uni_arr = np.array(universe, dtype=np.uint64)
    cdef u64[::1] uni = uni_arr
    cdef const u64[::1] allow = allowed
    cdef Py_ssize_t v, w
    cdef long long score, best_score
    cdef Py_ssize_t best
    cdef bint any_left, cand
    picks = []
    counts = []
    while True:
        any_left = False
        for w in range(words):
            if uni[w] != 0:
                any_left = True
                break
        if not any_left:
            break
        best = -1
        best_score = 0
        for v in range(n):
            cand = (allow[v >> 6] >> (v & 63)) & 1
            if cand and restrict_to_universe:
                cand = (uni[v >> 6] >> (v & 63)) & 1
            if not cand:
                continue
            score = _row_count(cover, v, uni, words)
            if score > best_score:
                best_score = score
                best = v
        if best < 0:
            return None
        picks.append(best)
        counts.append(best_score)
        for w in range(words):
            uni[w] &= ~cover[best, w]
    return picks, counts


def packing_bound(const u64[:, ::1] in_cover, universe, allowed):
    """Disjoint-dominator packing lower bound; -1 when infeasible."""
    cdef Py_ssize_t n = in_cover.shape[0]
    cdef Py_ssize_t words = in_cover.shape[1]
    cdef const u64[::1] uni = universe
    cdef const u64[::1] allow = allowed
    cdef Py_ssize_t v, w, i
    cdef long long c

    need = []
    counts = []
    for v in range(n):
        if (uni[v >> 6] >> (v & 63)) & 1:
            c = _row_count(in_cover, v, allow, words)
            if c == 0:
                return -1
            need.append(v)
            counts.append(c)
    if not need:
        return 0

    order = np.array(need, dtype=np.int64)[
        np.argsort(np.array(counts, dtype=np.int64), kind="stable")
    ]
    cdef long long[::1] order_view = order
    used_arr = np.zeros(words, dtype=np.uint64)
    cdef u64[::1] used = used_arr
    cdef Py_ssize_t packed = 0
    cdef bint overlap
    for i in range(order_view.shape[0]):
        v = order_view[i]
        overlap = False
        for w in range(words):
            if in_cover[v, w] & allow[w] & used[w]:
                overlap = True
                break
        if not overlap:
            packed += 1
            for w in range(words):
                used[w] |= in_cover[v, w] & allow[w]
    return packed

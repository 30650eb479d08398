"""Packed 64-bit bitset helpers shared by the dominating-set kernels.

Vertex ``i`` maps to bit ``i % 64`` of word ``i // 64`` (little-endian bit
order within each word).  All masks are ``uint64`` arrays of ``word_count(n)``
words; matrices stack one mask per vertex row.
"""
from __future__ import annotations

import numpy as np

WORD_BITS = 64


def word_count(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def empty_mask(n: int) -> np.ndarray:
    return np.zeros(word_count(n), dtype=np.uint64)


def full_mask(n: int) -> np.ndarray:
    words = np.full(word_count(n), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    tail = n % WORD_BITS
    if tail:
        words[-1] = np.uint64((1 << tail) - 1)
    return words


def pack_bool_matrix(mask: np.ndarray) -> np.ndarray:
    """Pack a boolean (rows, n) matrix into a C-contiguous (rows, words) array."""
    mask = np.ascontiguousarray(mask, dtype=bool)
    rows, n = mask.shape
    packed8 = np.packbits(mask, axis=1, bitorder="little")
    width = word_count(n) * 8
    if packed8.shape[1] < width:
        pad = np.zeros((rows, width - packed8.shape[1]), dtype=np.uint8)
        packed8 = np.concatenate([packed8, pad], axis=1)
    return np.ascontiguousarray(packed8).view(np.uint64)


def pack_bool_vector(mask: np.ndarray) -> np.ndarray:
    return pack_bool_matrix(mask.reshape(1, -1))[0]


def pack_indices(n: int, indices) -> np.ndarray:
    mask = np.zeros(n, dtype=bool)
    idx = list(indices)
    if idx:
        mask[idx] = True
    return pack_bool_vector(mask)


def unpack_to_bool(words: np.ndarray, n: int) -> np.ndarray:
    bits = np.unpackbits(words.view(np.uint8), bitorder="little")
    return bits[:n].astype(bool)


def bits_of(words: np.ndarray, n: int) -> list[int]:
    """Indices of set bits, ascending."""
    return np.flatnonzero(unpack_to_bool(words, n)).tolist()


def popcount(words: np.ndarray) -> int:
    return int(np.bitwise_count(words).sum())


def popcount_rows(matrix: np.ndarray) -> np.ndarray:
    return np.bitwise_count(matrix).sum(axis=1, dtype=np.int64)


def test_bit(words: np.ndarray, i: int) -> bool:
    return bool((int(words[i // WORD_BITS]) >> (i % WORD_BITS)) & 1)


def set_bit(words: np.ndarray, i: int) -> None:
    words[i // WORD_BITS] |= np.uint64(1 << (i % WORD_BITS))

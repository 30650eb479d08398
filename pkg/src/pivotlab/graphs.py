"""Directed graphs over integer vertices, backed by packed bitsets."""
from __future__ import annotations

import json

import numpy as np

from ._bitset import bits_of, full_mask, pack_bool_matrix, popcount_rows


class DirectedGraph:
    """Immutable digraph; ``out_closed``/``in_closed`` are packed closed
    neighborhoods (vertex itself plus out-/in-neighbors).  Self-loops are
    never stored."""

    def __init__(self, adjacency: np.ndarray):
        adj = np.asarray(adjacency, dtype=bool).copy()
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency must be a square boolean matrix")
        if adj.shape[0] == 0:
            raise ValueError("graph must have at least one vertex")
        np.fill_diagonal(adj, False)
        self.n = adj.shape[0]
        self._adj = adj
        closed = adj.copy()
        np.fill_diagonal(closed, True)
        self.out_closed = pack_bool_matrix(closed)
        self.in_closed = pack_bool_matrix(closed.T)
        self.full = full_mask(self.n)

    @classmethod
    def from_edges(cls, n: int, edges) -> "DirectedGraph":
        adj = np.zeros((n, n), dtype=bool)
        for p, x in edges:
            if not (0 <= p < n and 0 <= x < n):
                raise ValueError(f"edge ({p}, {x}) out of range for n={n}")
            if p != x:
                adj[p, x] = True
        return cls(adj)

    def out(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def in_neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[:, v]).tolist()

    def closed_out(self, v: int) -> list[int]:
        return bits_of(self.out_closed[v], self.n)

    def edges(self) -> list[tuple[int, int]]:
        return [(int(p), int(x)) for p, x in np.argwhere(self._adj)]

    @property
    def edge_count(self) -> int:
        return int(self._adj.sum())

    def out_degrees_closed(self) -> np.ndarray:
        return popcount_rows(self.out_closed)

    def in_degrees(self) -> np.ndarray:
        return self._adj.sum(axis=0)

    def symmetrized(self) -> "DirectedGraph":
        return DirectedGraph(self._adj | self._adj.T)

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": self.edges()}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DirectedGraph":
        doc = json.loads(text)
        return cls.from_edges(int(doc["n"]), doc["edges"])


def random_digraph(n: int, edge_prob: float, seed: int) -> DirectedGraph:
    """Bernoulli digraph with independent edges; deterministic per seed."""
    rng = np.random.Generator(np.random.PCG64(seed))
    adj = rng.random((n, n)) < edge_prob
    np.fill_diagonal(adj, False)
    return DirectedGraph(adj)


def load_undirected_edges(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Parse an undirected graph JSON document {"n": ..., "edges": [[u, v], ...]}."""
    doc = json.loads(text)
    n = int(doc["n"])
    edges = []
    for u, v in doc["edges"]:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
        if u != v:
            edges.append((min(u, v), max(u, v)))
    return n, sorted(set(edges))

import numpy as np
import pytest

from pivotlab import random_digraph
from pivotlab._bitset import (bits_of, full_mask, pack_bool_matrix,
                              pack_bool_vector, pack_indices, popcount,
                              popcount_rows, unpack_to_bool)
from pivotlab.kernels import available_backends, backend_name

BACKENDS = available_backends()


class TestBitset:
    def test_pack_unpack_round_trip(self):
        rng = np.random.Generator(np.random.PCG64(5))
        for n in (1, 7, 64, 65, 130):
            mask = rng.random(n) < 0.4
            words = pack_bool_vector(mask)
            assert np.array_equal(unpack_to_bool(words, n), mask)
            assert popcount(words) == int(mask.sum())
            assert bits_of(words, n) == np.flatnonzero(mask).tolist()

    def test_full_mask(self):
        for n in (1, 63, 64, 100):
            assert popcount(full_mask(n)) == n

    def test_pack_indices(self):
        words = pack_indices(70, [0, 64, 69])
        assert bits_of(words, 70) == [0, 64, 69]

    def test_matrix_row_counts(self):
        rng = np.random.Generator(np.random.PCG64(6))
        mask = rng.random((9, 70)) < 0.5
        packed = pack_bool_matrix(mask)
        assert np.array_equal(popcount_rows(packed), mask.sum(axis=1))


@pytest.mark.parametrize("backend", BACKENDS, ids=lambda b: b.BACKEND)
class TestKernelBackends:
    def test_cover_counts(self, backend):
        g = random_digraph(90, 0.2, 42)
        mask = pack_indices(g.n, range(0, g.n, 3))
        counts = backend.cover_counts(g.out_closed, mask)
        expect = [
            len(set(g.closed_out(v)) & set(range(0, g.n, 3))) for v in range(g.n)
        ]
        assert counts.tolist() == expect

    def test_greedy_cover_is_valid(self, backend):
        for seed in range(10):
            g = random_digraph(40, 0.15, seed)
            picks, counts = backend.greedy_cover(g.out_closed, g.full, g.full, True)
            covered = set()
            for p, c in zip(picks, counts):
                newly = set(g.closed_out(p)) - covered
                assert len(newly) == c
                covered |= newly
            assert covered == set(range(g.n))

    def test_infeasible_returns_none(self, backend):
        g = random_digraph(6, 0.0, 0)  # edgeless
        allowed = pack_indices(g.n, [0, 1])
        assert backend.greedy_cover(g.out_closed, g.full, allowed, False) is None

    def test_packing_bound_counts_disjoint_sets(self, backend):
        g = random_digraph(30, 0.1, 7)
        bound = backend.packing_bound(g.in_closed, g.full, g.full)
        assert 1 <= bound <= g.n

    def test_packing_infeasible(self, backend):
        g = random_digraph(5, 0.0, 0)
        allowed = pack_indices(g.n, [0])
        assert backend.packing_bound(g.in_closed, g.full, allowed) == -1


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled backend not built")
class TestBackendAgreement:
    def test_identical_outputs(self):
        compiled, pure = BACKENDS
        rng = np.random.Generator(np.random.PCG64(11))
        for seed in range(25):
            n = int(rng.integers(1, 120))
            g = random_digraph(n, float(rng.random()), seed)
            sub = pack_indices(n, rng.choice(n, size=max(1, n // 2), replace=False))
            assert np.array_equal(compiled.cover_counts(g.out_closed, sub),
                                  pure.cover_counts(g.out_closed, sub))
            for restrict in (True, False):
                a = compiled.greedy_cover(g.out_closed, g.full, g.full, restrict)
                b = pure.greedy_cover(g.out_closed, g.full, g.full, restrict)
                assert a == b
            assert compiled.packing_bound(g.in_closed, g.full, g.full) == \
                pure.packing_bound(g.in_closed, g.full, g.full)
            assert compiled.packing_bound(g.in_closed, sub, g.full) == \
                pure.packing_bound(g.in_closed, sub, g.full)


def test_selected_backend_is_known():
    assert backend_name() in ("compiled", "python")

import numpy as np
import pytest

from pivotlab import (Dataset, Minkowski, build_distance_matrix,
                      compute_query_distances)

# Hand-picked 9-point planar Euclidean instance.  With lower-bound-only
# elimination at PLANAR9_RADIUS, the minimum pivot count is 5 (confirmed by
# brute force in the tests that use it).
PLANAR9_POINTS = np.array([
    (3.732886157216435, 0.3549838538817218),
    (7.939504727723011, 0.5322674524966186),
    (1.1588123954315703, 1.622988764034955),
    (9.910698259877051, 2.4882154092025037),
    (2.5018709565510746, 4.174377590352696),
    (6.539896044904356, 3.7207041770509033),
    (2.241320885523173, 6.288158229306186),
    (5.866025777076387, 6.393193053894219),
    (8.137267087234004, 6.7759220129894855),
])
PLANAR9_QUERY = np.array((9.781976957678093, 4.8523612977115445))
PLANAR9_RADIUS = 5.127083089556588


def make_planar9():
    ds = Dataset(PLANAR9_POINTS, Minkowski(2.0))
    dm = build_distance_matrix(ds)
    qd = compute_query_distances(ds, PLANAR9_QUERY)
    return ds, dm, qd


@pytest.fixture
def planar9():
    return make_planar9()


def make_l1_tie_fan(pivot_at):
    """Six-point L1 instance: five points all at distance 8 from the origin
    query, plus one extra point at ``pivot_at`` (index 0)."""
    objs = np.array([pivot_at] + [(1 + i, 7 - i) for i in range(1, 6)], dtype=float)
    ds = Dataset(objs, Minkowski(1.0))
    dm = build_distance_matrix(ds)
    qd = compute_query_distances(ds, np.zeros(2))
    return ds, dm, qd


@pytest.fixture
def tie_fan_near():
    """Extra point (2, 2): close to the query, equidistant from all others."""
    return make_l1_tie_fan((2, 2))


@pytest.fixture
def tie_fan_far():
    """Extra point (6, 6): far from the query, equidistant from all others."""
    return make_l1_tie_fan((6, 6))


def random_vector_instance(seed, n_lo=4, n_hi=40, d=5, metric=None):
    """Seeded dataset + withheld query + distances, for property loops."""
    rng = np.random.Generator(np.random.PCG64(seed))
    n = int(rng.integers(n_lo, n_hi + 1))
    points = rng.random((n + 1, d))
    ds = Dataset(points[:n], metric or Minkowski(2.0))
    dm = build_distance_matrix(ds)
    qd = compute_query_distances(ds, points[n])
    return ds, dm, qd, rng

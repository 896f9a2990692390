import math

import numpy as np
import pytest

from prohd import _kernels, build_flat_index, hausdorff_bruteforce, hausdorff_via_index, nearest, threads
from prohd._accel import USE_NUMBA, max_threads
from prohd.errors import DimensionMismatchError

from oracles import naive_nearest


def test_build_single_point():
    idx = build_flat_index([[1.0, 2.0]])
    assert idx.size == 1 and idx.dim == 2


def test_self_query_returns_own_index(rng):
    pts = rng.normal(size=(50, 4))
    idx = build_flat_index(pts)
    for i in range(50):
        assert nearest(idx, pts[i]) == (i, 0.0)


def test_hand_example():
    idx = build_flat_index([[0.0, 0.0], [10.0, 0.0]])
    assert nearest(idx, [1.0, 0.0]) == (0, 1.0)


def test_tie_goes_to_lowest_index():
    idx = build_flat_index([[2.0], [0.0], [2.0], [0.0]])
    assert nearest(idx, [1.0]) == (0, 1.0)


def test_query_dimension_mismatch():
    idx = build_flat_index([[0.0, 0.0]])
    with pytest.raises(DimensionMismatchError):
        idx.nearest([1.0, 2.0, 3.0])


def test_random_queries_match_naive_scan(rng):
    data = rng.normal(size=(10_000, 16))
    queries = rng.normal(size=(20, 16))
    idx = build_flat_index(data)
    for q in queries:
        j, d = idx.nearest(q)
        oj, od = naive_nearest(data.tolist(), q.tolist())
        assert j == oj
        assert abs(d - od) <= 1e-12


def test_batched_search_matches_single(rng):
    data, q = rng.normal(size=(500, 5)), rng.normal(size=(40, 5))
    idx = build_flat_index(data)
    js, ds = idx.search(q)
    for i in range(40):
        assert (js[i], ds[i]) == idx.nearest(q[i])


def test_hausdorff_via_index_trivial(rng):
    a = rng.normal(size=(30, 3))
    assert hausdorff_via_index(a, a).value == 0.0
    assert hausdorff_via_index([[0.0, 0.0]], [[3.0, 4.0]]).value == 5.0
    with pytest.raises(DimensionMismatchError):
        hausdorff_via_index([[0.0, 0.0]], [[1.0]])


@pytest.mark.parametrize("seed", range(25))
def test_via_index_equals_bruteforce_bitwise(seed):
    r = np.random.default_rng(seed)
    d = int(r.choice([1, 2, 4, 8, 16]))
    a = r.normal(size=(r.integers(1, 400), d))
    b = r.normal(size=(r.integers(1, 400), d)) + r.normal(size=d)
    assert hausdorff_via_index(a, b) == hausdorff_bruteforce(a, b)


def test_via_index_with_duplicate_points_and_ties():
    a = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 1.0]] * 40)
    b = np.array([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]] * 30)
    assert hausdorff_via_index(a, b) == hausdorff_bruteforce(a, b)


@pytest.mark.parametrize("seed", range(4))
def test_kernel_twins_agree_bitwise(seed):
    if not USE_NUMBA:
        pytest.skip("numba backend disabled")
    r = np.random.default_rng(seed)
    q, data = r.normal(size=(700, 7)), r.normal(size=(900, 7))
    b1, i1 = _kernels.nearest_sq_nb(q, data)
    b2, i2 = _kernels.nearest_sq_np(q, data)
    assert np.array_equal(b1, b2) and np.array_equal(i1, i2)
    assert _kernels.directed_max_sq_nb(q, data) == _kernels.directed_max_sq_np(q, data)


def test_early_abandon_does_not_change_results(rng):
    # clustered data makes both pruning rules fire often
    centres = rng.normal(size=(5, 3)) * 10
    q = (centres[rng.integers(0, 5, 600)] + rng.normal(size=(600, 3)) * 0.1)
    data = (centres[rng.integers(0, 5, 800)] + rng.normal(size=(800, 3)) * 0.1)
    full = ((q[:, None, :] - data[None, :, :]) ** 2).sum(-1)
    expected = full.min(axis=1)
    best, idx = _kernels.nearest_sq(q, data)
    assert np.allclose(best, expected, rtol=1e-12, atol=0)
    assert np.array_equal(idx, full.argmin(axis=1))
    v, i, j = _kernels.directed_max_sq(q, data)
    assert math.isclose(v, expected.max(), rel_tol=1e-12)
    assert i == int(np.argmax(best)) and j == idx[i]


def test_thread_count_independence(rng):
    a, b = rng.normal(size=(3000, 6)), rng.normal(size=(2500, 6)) + 0.3
    results = []
    for t in sorted({1, 2, max_threads()}):
        with threads(t):
            results.append(hausdorff_via_index(a, b))
    assert all(r == results[0] for r in results)

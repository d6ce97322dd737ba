import numpy as np
import pytest

from circuitcodes import kernels


def random_rows(rng, count, n, d, closed):
    rows = rng.integers(1, d + 1, size=(count, n))
    if closed and n % 2 == 0:
        half = rows[:, : n // 2]
        rows = np.concatenate((half, rng.permuted(half, axis=1)), axis=1)
    return rows.astype(np.int64)


@pytest.mark.parametrize("closed", [False, True])
@pytest.mark.parametrize("n", [1, 2, 5, 8, 13, 20])
def test_scans_agree(n, closed):
    rng = np.random.default_rng(n * 7 + closed)
    rows = random_rows(rng, 300, n, 6, closed)
    for k in (1, 2, 3, 5):
        assert np.array_equal(
            kernels.core_scan_batch_numba(rows, k), kernels.core_scan_batch_numpy(rows, k)
        )
        assert np.array_equal(
            kernels.oracle_scan_batch_numba(rows, k), kernels.oracle_scan_batch_numpy(rows, k)
        )
        for row in rows[:40]:
            assert kernels.core_scan_numba(row, k) == kernels.core_scan_numpy(row, k)
            assert kernels.oracle_scan_numba(row, k) == kernels.oracle_scan_numpy(row, k)


def test_node_and_overlap_agree():
    rng = np.random.default_rng(3)
    k, d, r, n = 6, 11, 9, 30
    period = n // 2
    for _ in range(400):
        depth = int(rng.integers(r, period))
        seq = np.zeros(period, dtype=np.int64)
        seq[:r] = np.arange(1, r + 1)
        seq[r:depth] = rng.integers(1, d + 1, size=depth - r)
        for cand in range(1, d + 1):
            assert kernels.node_check_numba(seq, depth, cand, k, n, period, d) == (
                kernels.node_check_numpy(seq, depth, cand, k, n, period, d)
            )
        assert kernels.overlap_ok_numba(seq, depth, k, r, n, period) == (
            kernels.overlap_ok_numpy(seq, depth, k, r, n, period)
        )


def test_walk_vertices():
    v = kernels.walk_vertices(np.array([1, 2, 1, 2]))
    assert v.tolist() == [0, 1, 3, 2, 0]


def test_status_meaning():
    assert kernels.core_scan_numpy(np.array([1, 2, 1, 2]), 2)[0] == kernels.OK
    assert kernels.core_scan_numpy(np.array([1, 2, 3]), 2)[0] == kernels.NOT_A_CIRCUIT
    assert kernels.core_scan_numpy(np.array([1, 1]), 1)[0] == kernels.NOT_SIMPLE_CYCLE
    status, a, b = kernels.core_scan_numpy(np.array([1, 2, 1, 3, 2, 3]), 2)
    assert (status, a, b) == (kernels.SPREAD_VIOLATION, 0, 3)

"""Nearest-neighbour scan kernels.

Each kernel has a numba implementation (``*_nb``) and a numpy twin
(``*_np``). Both accumulate a squared distance coordinate by coordinate
in index order, so they return bit-identical values and indices. The
public names dispatch on :data:`prohd._accel.USE_NUMBA`.

Ties always resolve to the lowest index.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit, prange

# queries per work unit in the parallel directed sweep; fixed so the
# schedule, and therefore the pruning, is independent of thread count
CHUNK = 64

# element budget for one numpy distance block
_NP_BLOCK_ELEMS = 1 << 20


def _np_block_sq(q: np.ndarray, data_t: np.ndarray) -> np.ndarray:
    acc = np.zeros((q.shape[0], data_t.shape[1]))
    for d in range(q.shape[1]):
        t = q[:, d, None] - data_t[d][None, :]
        acc += t * t
    return acc


def _np_rows_per_block(n_data: int) -> int:
    return max(1, _NP_BLOCK_ELEMS // max(1, n_data))


def nearest_sq_np(queries: np.ndarray, data: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    nq = queries.shape[0]
    best = np.empty(nq)
    idx = np.empty(nq, dtype=np.int64)
    data_t = np.ascontiguousarray(data.T)
    step = _np_rows_per_block(data.shape[0])
    for s in range(0, nq, step):
        acc = _np_block_sq(queries[s : s + step], data_t)
        j = np.argmin(acc, axis=1)
        idx[s : s + step] = j
        best[s : s + step] = acc[np.arange(acc.shape[0]), j]
    return best, idx


def directed_max_sq_np(queries: np.ndarray, data: np.ndarray) -> tuple[float, int, int]:
    best, idx = nearest_sq_np(queries, data)
    i = int(np.argmax(best))
    return float(best[i]), i, int(idx[i])


if USE_NUMBA:

    @njit(cache=True, nogil=True)
    def _scan_one(queries, i, data, best, cutoff):
        # Exact 1-NN of queries[i] with early abandonment. Stops as soon as a
        # neighbour strictly closer than `cutoff` is found (pass -1.0 to disable).
        dim = data.shape[1]
        bj = -1
        for j in range(data.shape[0]):
            s = 0.0
            for d in range(dim):
                t = queries[i, d] - data[j, d]
                s += t * t
                if s >= best:
                    break
            if s < best:
                best = s
                bj = j
                if best < cutoff:
                    break
        return best, bj

    @njit(cache=True, parallel=True, nogil=True)
    def nearest_sq_nb(queries, data):
        nq = queries.shape[0]
        best = np.empty(nq)
        idx = np.empty(nq, dtype=np.int64)
        for i in prange(nq):
            b, j = _scan_one(queries, i, data, np.inf, -1.0)
            best[i] = b
            idx[i] = j
        return best, idx

    @njit(cache=True, parallel=True, nogil=True)
    def _directed_chunks_nb(queries, data, chunk):
        nq = queries.shape[0]
        nchunks = (nq + chunk - 1) // chunk
        cval = np.full(nchunks, -1.0)
        cq = np.zeros(nchunks, dtype=np.int64)
        cd = np.zeros(nchunks, dtype=np.int64)
        for c in prange(nchunks):
            cmax = -1.0
            qi = 0
            dj = 0
            stop = min(nq, (c + 1) * chunk)
            for i in range(c * chunk, stop):
                # a query whose NN is closer than the running max cannot raise it
                b, j = _scan_one(queries, i, data, np.inf, cmax)
                if b > cmax:
                    cmax = b
                    qi = i
                    dj = j
            cval[c] = cmax
            cq[c] = qi
            cd[c] = dj
        return cval, cq, cd

    def directed_max_sq_nb(queries: np.ndarray, data: np.ndarray) -> tuple[float, int, int]:
        cval, cq, cd = _directed_chunks_nb(queries, data, CHUNK)
        c = int(np.argmax(cval))
        return float(cval[c]), int(cq[c]), int(cd[c])

    nearest_sq = nearest_sq_nb
    directed_max_sq = directed_max_sq_nb
else:
    nearest_sq_nb = None
    directed_max_sq_nb = None
    nearest_sq = nearest_sq_np
    directed_max_sq = directed_max_sq_np

"""Exact flat nearest-neighbour index and index-backed Hausdorff distance."""

from __future__ import annotations

import numpy as np

from . import _kernels
from .errors import DimensionMismatchError
from .geometry import HausdorffResult, PointCloud, as_cloud, check_same_dim, combine_directed


class FlatIndex:
    """Exact 1-NN over a fixed cloud by full scan.

    Distances are squared internally and only square-rooted on the way out.
    The index holds a read-only reference to the cloud, so it can be shared
    between threads.
    """

    __slots__ = ("cloud",)

    def __init__(self, cloud):
        self.cloud = as_cloud(cloud)

    @property
    def data(self) -> np.ndarray:
        return self.cloud.points

    @property
    def dim(self) -> int:
        return self.cloud.dim

    @property
    def size(self) -> int:
        return self.cloud.n

    def _queries(self, q) -> np.ndarray:
        q = np.ascontiguousarray(q, dtype=np.float64)
        if q.ndim == 1:
            q = q[None, :]
        if q.ndim != 2 or q.shape[1] != self.dim:
            raise DimensionMismatchError(f"query dimension {q.shape[-1]} != index dimension {self.dim}")
        return q

    def nearest(self, query) -> tuple[int, float]:
        """Index and Euclidean distance of the nearest stored point."""
        sq, idx = _kernels.nearest_sq(self._queries(query), self.data)
        return int(idx[0]), float(np.sqrt(sq[0]))

    def search(self, queries) -> tuple[np.ndarray, np.ndarray]:
        """Batched :meth:`nearest`: returns ``(indices, distances)``."""
        q = self._queries(queries.points if isinstance(queries, PointCloud) else queries)
        sq, idx = _kernels.nearest_sq(q, self.data)
        return idx, np.sqrt(sq)

    def directed_max_sq(self, queries) -> tuple[float, int, int]:
        """Largest squared NN distance over ``queries``.

        Returns ``(value, query_index, neighbour_index)``. Queries that cannot
        raise the running maximum stop scanning early.
        """
        q = self._queries(queries.points if isinstance(queries, PointCloud) else queries)
        return _kernels.directed_max_sq(q, self.data)

    def __repr__(self) -> str:
        return f"FlatIndex(size={self.size}, dim={self.dim})"


def build_flat_index(cloud) -> FlatIndex:
    return FlatIndex(cloud)


def nearest(index: FlatIndex, query) -> tuple[int, float]:
    return index.nearest(query)


def hausdorff_via_index(a, b) -> HausdorffResult:
    """Exact Hausdorff distance with one flat index per side."""
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    ia, ib = FlatIndex(a), FlatIndex(b)
    ab, a_i, b_j = ib.directed_max_sq(a)
    ba, b_i, a_j = ia.directed_max_sq(b)
    return combine_directed(ab, a_i, b_j, ba, b_i, a_j)

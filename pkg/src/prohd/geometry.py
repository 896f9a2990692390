"""Point-cloud types and pure geometric kernels.

Everything here is exact and single-threaded. :func:`hausdorff_bruteforce`
is the reference the faster paths are checked against, so it is kept
deliberately plain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, InvalidCloudError

UNIT_TOL = 1e-9

_BLOCK_ELEMS = 1 << 20


class PointCloud:
    """An immutable ``n x D`` array of finite float64 coordinates, ``n >= 1``.

    Inputs stored as float32 are widened on construction so every reduction
    downstream accumulates in double precision.
    """

    __slots__ = ("points",)

    def __init__(self, points):
        try:
            arr = np.array(points, dtype=np.float64, order="C")
        except (TypeError, ValueError) as exc:
            raise InvalidCloudError(f"cannot interpret points as a 2-D array: {exc}") from None
        if arr.ndim != 2:
            raise InvalidCloudError(f"points must be 2-D (n, D), got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise InvalidCloudError("point cloud is empty")
        if arr.shape[1] < 1:
            raise InvalidCloudError("point dimension must be at least 1")
        if not np.isfinite(arr).all():
            raise InvalidCloudError("point cloud contains NaN or Inf")
        arr.flags.writeable = False
        self.points = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> PointCloud:
        # skip validation for arrays derived from an existing cloud
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.float64)
        arr.flags.writeable = False
        obj.points = arr
        return obj

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def take(self, indices) -> PointCloud:
        idx = np.asarray(indices, dtype=np.int64)
        if idx.size == 0:
            raise InvalidCloudError("cannot take an empty subset")
        return PointCloud._trusted(self.points[idx])

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, dim={self.dim})"


def as_cloud(x) -> PointCloud:
    return x if isinstance(x, PointCloud) else PointCloud(x)


class Direction:
    """A unit vector in R^D (norm within 1e-9 of one)."""

    __slots__ = ("components",)

    def __init__(self, components):
        v = np.array(components, dtype=np.float64).reshape(-1)
        if v.size == 0 or not np.isfinite(v).all():
            raise ValueError("direction must be a non-empty finite vector")
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"direction is not unit length (norm={norm!r})")
        v.flags.writeable = False
        self.components = v

    @classmethod
    def from_vector(cls, v) -> Direction:
        v = np.asarray(v, dtype=np.float64).reshape(-1)
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("cannot normalise a zero or non-finite vector")
        u = v / norm
        # one more pass brings the norm to within a few ulps of 1
        return cls(u / np.linalg.norm(u))

    @classmethod
    def axis(cls, dim: int, k: int = 0) -> Direction:
        e = np.zeros(dim)
        e[k] = 1.0
        return cls(e)

    @property
    def dim(self) -> int:
        return self.components.shape[0]

    def __repr__(self) -> str:
        return f"Direction({np.array2string(self.components, precision=4)})"


def as_direction(u) -> Direction:
    return u if isinstance(u, Direction) else Direction(u)


@dataclass(frozen=True)
class HausdorffResult:
    """Hausdorff distance with its directed parts.

    ``witness_a``/``witness_b`` index the pair of points realising ``value``:
    the farthest point of the dominating direction and its nearest neighbour
    in the other cloud.
    """

    value: float
    directed_ab: float
    directed_ba: float
    witness_a: int
    witness_b: int


def check_same_dim(a: PointCloud, b: PointCloud) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _check_direction(cloud: PointCloud, u: Direction) -> None:
    if u.dim != cloud.dim:
        raise DimensionMismatchError(f"direction has dimension {u.dim}, cloud has {cloud.dim}")


def combine_directed(
    ab_sq: float, ab_a: int, ab_b: int, ba_sq: float, ba_b: int, ba_a: int
) -> HausdorffResult:
    """Build a result from squared directed maxima and their witness pairs.

    The A-to-B side wins ties.
    """
    dab = float(np.sqrt(ab_sq))
    dba = float(np.sqrt(ba_sq))
    if ab_sq >= ba_sq:
        return HausdorffResult(dab, dab, dba, int(ab_a), int(ab_b))
    return HausdorffResult(dba, dab, dba, int(ba_a), int(ba_b))


def union(a, b) -> PointCloud:
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    return PointCloud._trusted(np.vstack([a.points, b.points]))


def centroid(cloud) -> np.ndarray:
    return as_cloud(cloud).points.mean(axis=0)


def project(cloud, u) -> np.ndarray:
    """Scalar coordinates of every point along ``u``."""
    cloud, u = as_cloud(cloud), as_direction(u)
    _check_direction(cloud, u)
    return cloud.points @ u.components


def delta(cloud_union, u, centered: bool = True) -> float:
    """Largest distance from any point to the line through the origin along ``u``.

    With ``centered`` the cloud mean is subtracted first, i.e. the line passes
    through the mean instead. Hausdorff distances are translation invariant,
    so the centred value bounds the projection error just as well and is
    never larger for clouds straddling the origin.
    """
    cloud, u = as_cloud(cloud_union), as_direction(u)
    _check_direction(cloud, u)
    p = cloud.points
    if centered:
        p = p - p.mean(axis=0)
    c = u.components
    resid = p - np.outer(p @ c, c)
    return float(np.sqrt(np.max(np.einsum("ij,ij->i", resid, resid))))


def _directed_1d(pa: np.ndarray, pb: np.ndarray) -> tuple[float, int, int]:
    # max over a of min over b |pa - pb| by binary search into sorted pb
    order = np.argsort(pb, kind="stable")
    sb = pb[order]
    nb = sb.shape[0]
    pos = np.searchsorted(sb, pa, side="left")

    has_r = pos < nb
    rpos = np.minimum(pos, nb - 1)
    dr = np.where(has_r, sb[rpos] - pa, np.inf)
    jr = np.where(has_r, order[rpos], nb)

    has_l = pos > 0
    lval = sb[np.maximum(pos - 1, 0)]
    # first occurrence of the left value gives the lowest original index
    lpos = np.searchsorted(sb, lval, side="left")
    dl = np.where(has_l, pa - lval, np.inf)
    jl = np.where(has_l, order[lpos], nb)

    dmin = np.minimum(dl, dr)
    j = np.where(dl < dr, jl, np.where(dr < dl, jr, np.minimum(jl, jr)))
    i = int(np.argmax(dmin))
    return float(dmin[i]), i, int(j[i])


def hausdorff_1d(pa, pb) -> HausdorffResult:
    """Exact Hausdorff distance between two multisets of scalars, O(n log n)."""
    pa = np.asarray(pa, dtype=np.float64).reshape(-1)
    pb = np.asarray(pb, dtype=np.float64).reshape(-1)
    if pa.size == 0 or pb.size == 0:
        raise InvalidCloudError("empty scalar set")
    dab, ia, jb = _directed_1d(pa, pb)
    dba, jb2, ia2 = _directed_1d(pb, pa)
    if dab >= dba:
        return HausdorffResult(dab, dab, dba, ia, jb)
    return HausdorffResult(dba, dab, dba, ia2, jb2)


def projected_hausdorff_1d(a, b, u, method: str = "merge") -> HausdorffResult:
    """Hausdorff distance between the projections of ``a`` and ``b`` onto ``u``.

    ``method="bruteforce"`` evaluates every pair instead of the sorted merge.
    """
    a, b, u = as_cloud(a), as_cloud(b), as_direction(u)
    check_same_dim(a, b)
    pa, pb = project(a, u), project(b, u)
    if method == "merge":
        return hausdorff_1d(pa, pb)
    if method == "bruteforce":
        return hausdorff_bruteforce(pa[:, None], pb[:, None])
    raise ValueError(f"unknown method {method!r}")


def hausdorff_bruteforce(a, b) -> HausdorffResult:
    """Exact Hausdorff distance by evaluating all ``n_A * n_B`` pairs.

    Meant as a reference for small clouds. Squared distances are summed
    coordinate by coordinate; ties go to the lowest index.
    """
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    A, B = a.points, b.points
    na, nb = A.shape[0], B.shape[0]
    bt = np.ascontiguousarray(B.T)

    row_min = np.empty(na)
    row_arg = np.empty(na, dtype=np.int64)
    col_min = np.full(nb, np.inf)
    col_arg = np.zeros(nb, dtype=np.int64)

    step = max(1, _BLOCK_ELEMS // nb)
    for s in range(0, na, step):
        blk = A[s : s + step]
        sq = np.zeros((blk.shape[0], nb))
        for d in range(A.shape[1]):
            t = blk[:, d, None] - bt[d][None, :]
            sq += t * t
        r = np.argmin(sq, axis=1)
        row_arg[s : s + step] = r
        row_min[s : s + step] = sq[np.arange(blk.shape[0]), r]
        c = np.argmin(sq, axis=0)
        cval = sq[c, np.arange(nb)]
        better = cval < col_min
        col_min[better] = cval[better]
        col_arg[better] = c[better] + s

    ia = int(np.argmax(row_min))
    jb = int(np.argmax(col_min))
    return combine_directed(row_min[ia], ia, int(row_arg[ia]), col_min[jb], jb, int(col_arg[jb]))

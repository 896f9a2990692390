"""Extreme-point selection along the centroid axis and principal components."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatchError
from .geometry import Direction, as_cloud, centroid, check_same_dim, union

CENTROID_EPS = 1e-9
OVERSAMPLE = 2
POWER_ITERS = 7

# guards floor/ceil of alpha*n against products like 0.29*100 = 28.999...
_COUNT_EPS = 1e-9


def floor_count(alpha: float, n: int) -> int:
    """``max(1, floor(alpha * n))``."""
    return max(1, math.floor(alpha * n + _COUNT_EPS))


def ceil_count(alpha: float, n: int) -> int:
    """``max(1, ceil(alpha * n))``."""
    return max(1, math.ceil(alpha * n - _COUNT_EPS))


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class DirectionSet:
    """Ordered unit directions with a tag per entry (``centroid`` or ``pca-k``).

    ``shortfall`` counts requested principal components that could not be
    produced because the data has lower rank.
    """

    directions: np.ndarray
    tags: tuple[str, ...]
    explained_variance: np.ndarray | None = None
    shortfall: int = 0

    def __post_init__(self):
        d = np.atleast_2d(np.asarray(self.directions, dtype=np.float64))
        if d.size == 0:
            d = d.reshape(0, d.shape[-1] if d.ndim == 2 else 0)
        if d.shape[0] != len(self.tags):
            raise ValueError("one tag per direction is required")
        d.flags.writeable = False
        object.__setattr__(self, "directions", d)
        object.__setattr__(self, "tags", tuple(self.tags))

    @classmethod
    def empty(cls, dim: int) -> DirectionSet:
        return cls(np.zeros((0, dim)), ())

    def __len__(self) -> int:
        return len(self.tags)

    def __iter__(self):
        for row in self.directions:
            yield Direction(row)

    def __getitem__(self, i) -> Direction:
        return Direction(self.directions[i])

    def __add__(self, other: DirectionSet) -> DirectionSet:
        return DirectionSet(
            np.vstack([self.directions, other.directions]),
            self.tags + other.tags,
            shortfall=self.shortfall + other.shortfall,
        )

    def head(self, k: int) -> DirectionSet:
        return DirectionSet(self.directions[:k], self.tags[:k])


@dataclass(frozen=True)
class SelectionResult:
    idx_a: np.ndarray
    idx_b: np.ndarray
    directions: DirectionSet = field(repr=False)

    def __or__(self, other: SelectionResult) -> SelectionResult:
        return SelectionResult(
            np.union1d(self.idx_a, other.idx_a),
            np.union1d(self.idx_b, other.idx_b),
            self.directions + other.directions,
        )


def _lowest_k(values: np.ndarray, k: int) -> np.ndarray:
    # the first k entries of a stable ascending argsort, in O(n)
    n = values.shape[0]
    if k >= n:
        return np.arange(n)
    t = np.partition(values, k - 1)[k - 1]
    below = np.flatnonzero(values < t)
    at = np.flatnonzero(values == t)[: k - below.size]
    return np.concatenate([below, at])


def extreme_indices(values, k: int) -> np.ndarray:
    """Sorted positions of the ``k`` smallest and ``k`` largest values.

    Ties at either threshold prefer the lower position.
    """
    v = np.asarray(values, dtype=np.float64).reshape(-1)
    n = v.shape[0]
    k = int(k)
    if not 1 <= k <= n:
        raise ValueError(f"k must satisfy 1 <= k <= n ({n}), got {k}")
    return np.union1d(_lowest_k(v, k), _lowest_k(-v, k))


def centroid_direction(x, y) -> Direction:
    """Unit vector from the mean of ``x`` to the mean of ``y``; ``e1`` if they coincide."""
    x, y = as_cloud(x), as_cloud(y)
    check_same_dim(x, y)
    u = centroid(y) - centroid(x)
    if np.linalg.norm(u) < CENTROID_EPS:
        return Direction.axis(x.dim, 0)
    return Direction.from_vector(u)


def select_along(x, y, dirs: np.ndarray, alpha: float):
    kx, ky = floor_count(alpha, x.n), floor_count(alpha, y.n)
    ia, ib = [], []
    for u in dirs:
        ia.append(extreme_indices(x.points @ u, kx))
        ib.append(extreme_indices(y.points @ u, ky))
    return np.unique(np.concatenate(ia)), np.unique(np.concatenate(ib))


def centroid_indices(x, y, alpha: float) -> SelectionResult:
    """Extremes of both clouds along the centroid-difference axis.

    Keeps ``max(1, floor(alpha * n))`` points from each end, per cloud.
    """
    x, y = as_cloud(x), as_cloud(y)
    check_same_dim(x, y)
    alpha = check_alpha(alpha)
    u = centroid_direction(x, y)
    dirs = DirectionSet(u.components[None, :], ("centroid",))
    ia, ib = select_along(x, y, dirs.directions, alpha)
    return SelectionResult(ia, ib, dirs)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    j = int(np.argmax(np.abs(v)))
    return -v if v[j] < 0 else v


def pca_top_components(
    z, m: int, seed: int = 0, *, oversample: int = OVERSAMPLE, n_iter: int = POWER_ITERS
) -> DirectionSet:
    """Top ``m`` principal axes of ``z`` by seeded randomized subspace iteration.

    Returns fewer than ``m`` directions when the centred data has lower
    numerical rank; ``shortfall`` records how many are missing. Each axis is
    signed so that its largest-magnitude coordinate is positive.
    """
    z = as_cloud(z)
    m = int(m)
    if m < 1:
        raise ValueError("m must be at least 1")
    if m > z.dim:
        raise DimensionMismatchError(f"cannot extract {m} components in dimension {z.dim}")
    n, dim = z.n, z.dim
    zc = z.points - z.points.mean(axis=0)

    k = min(m + oversample, dim)
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(zc @ rng.standard_normal((dim, k)))
    for _ in range(n_iter):
        q, _ = np.linalg.qr(zc.T @ q)
        q, _ = np.linalg.qr(zc @ q)
    _, s, vt = np.linalg.svd(q.T @ zc, full_matrices=False)

    eps = np.finfo(np.float64).eps
    # relative rank cut, floored at the noise level left by centring
    noise = 16.0 * eps * float(np.abs(z.points).max()) * math.sqrt(n * dim)
    tol = max(max(n, dim) * eps * (float(s[0]) if s.size else 0.0), noise)
    rank = int(np.count_nonzero(s > tol))
    r = min(m, rank)

    comps = vt[:r]
    comps = comps / np.linalg.norm(comps, axis=1, keepdims=True)
    comps = np.array([_canonical_sign(c) for c in comps]).reshape(r, dim)
    var = s[:r] ** 2 / max(n - 1, 1)
    return DirectionSet(comps, tuple(f"pca-{i + 1}" for i in range(r)), var, m - r)


def pca_proj_indices(x, y, alpha: float, m: int, seed: int = 0) -> SelectionResult:
    """Extremes of both clouds along the top ``m`` principal axes of their union.

    ``alpha`` is the per-direction fraction. Projections use the raw points;
    centring would shift every coordinate equally and leave the order intact.
    """
    x, y = as_cloud(x), as_cloud(y)
    check_same_dim(x, y)
    alpha = check_alpha(alpha)
    dirs = pca_top_components(union(x, y), m, seed)
    if len(dirs) == 0:
        # zero variance: every point coincides, one representative per side is exact
        return SelectionResult(np.array([0]), np.array([0]), dirs)
    ia, ib = select_along(x, y, dirs.directions, alpha)
    return SelectionResult(ia, ib, dirs)

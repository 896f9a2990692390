"""Projection-guided Hausdorff approximation with its additive error bound."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    HausdorffResult,
    as_cloud,
    as_direction,
    check_same_dim,
    combine_directed,
    delta,
    projected_hausdorff_1d,
    union,
)
from .index import FlatIndex
from .selection import (
    DirectionSet,
    select_along,
    centroid_direction,
    check_alpha,
    pca_top_components,
)

MODES = ("subset-subset", "subset-full")


@dataclass(frozen=True)
class ProHdConfig:
    """Estimator settings.

    ``mode="subset-subset"`` measures the selected points against each
    other. ``mode="subset-full"`` measures them against the full opposite
    cloud, which can never overshoot the true distance.
    """

    alpha: float = 0.01
    mode: str = "subset-subset"
    delta_centered: bool = True
    seed: int = 0

    def __post_init__(self):
        check_alpha(self.alpha)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")


@dataclass(frozen=True)
class ProHdReport:
    estimate: float
    exact_on_subsets: HausdorffResult
    size_a: int
    size_b: int
    min_delta: float
    bound_upper: float
    directions_used: DirectionSet = field(repr=False)
    timings: dict[str, float] = field(default_factory=dict)
    idx_a: np.ndarray = field(default=None, repr=False)
    idx_b: np.ndarray = field(default=None, repr=False)
    m: int = 1
    mode: str = "subset-subset"

    @property
    def bound_lower(self) -> float:
        return self.estimate


def num_components(dim: int) -> int:
    """Principal axes used for a ``dim``-dimensional input: ``max(1, floor(sqrt(dim)))``."""
    return max(1, math.isqrt(int(dim)))


def prohd_directions(a, b, seed: int = 0, m: int | None = None) -> DirectionSet:
    """Centroid axis followed by the top ``m`` principal axes of ``a`` and ``b`` combined."""
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    m = num_components(a.dim) if m is None else m
    u0 = centroid_direction(a, b)
    return DirectionSet(u0.components[None, :], ("centroid",)) + pca_top_components(union(a, b), m, seed)


def _as_direction_rows(dirs) -> np.ndarray:
    if isinstance(dirs, DirectionSet):
        rows = dirs.directions
    else:
        rows = np.array([as_direction(u).components for u in dirs]).reshape(len(dirs), -1)
    if rows.shape[0] == 0:
        raise ValueError("direction set is empty")
    return rows


def multi_direction_hausdorff(a, b, dirs) -> float:
    """Largest 1-D projected Hausdorff distance over ``dirs``, on the full clouds."""
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    rows = _as_direction_rows(dirs)
    return max(projected_hausdorff_1d(a, b, u).value for u in rows)


def min_delta(a, b, dirs, centered: bool = True) -> float:
    """Smallest residual radius of ``a`` and ``b`` combined over ``dirs``."""
    rows = _as_direction_rows(dirs)
    z = union(a, b)
    return min(delta(z, u, centered) for u in rows)


def proj_hausdorff(a, b, cfg: ProHdConfig | None = None, **overrides) -> ProHdReport:
    """Approximate the Hausdorff distance between ``a`` and ``b``.

    Points at both ends of the centroid axis (fraction ``alpha`` per end) and
    of each of the top ``m = floor(sqrt(D))`` principal axes (fraction
    ``alpha / m``) are kept, and the exact Hausdorff distance is taken on what
    remains. The true distance lies within
    ``[H_U, H_U + 2 * min_delta]``, where ``H_U`` is the largest 1-D projected
    distance over the axes used.
    """
    cfg = ProHdConfig(**overrides) if cfg is None else cfg
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    timings: dict[str, float] = {}
    clock = time.perf_counter
    t_start = clock()

    m = num_components(a.dim)
    t = clock()
    u0 = centroid_direction(a, b)
    ca, cb = select_along(a, b, u0.components[None, :], cfg.alpha)
    timings["selection"] = clock() - t

    t = clock()
    pcs = pca_top_components(union(a, b), m, cfg.seed)
    timings["pca"] = clock() - t

    t = clock()
    idx_a, idx_b = ca, cb
    if len(pcs):
        pa, pb = select_along(a, b, pcs.directions, cfg.alpha / m)
        idx_a, idx_b = np.union1d(ca, pa), np.union1d(cb, pb)
    timings["selection"] += clock() - t

    t = clock()
    a_sel, b_sel = a.take(idx_a), b.take(idx_b)
    if cfg.mode == "subset-subset":
        index_a, index_b = FlatIndex(a_sel), FlatIndex(b_sel)
    else:
        index_a, index_b = FlatIndex(a), FlatIndex(b)
    timings["index"] = clock() - t

    t = clock()
    ab, i, j = index_b.directed_max_sq(a_sel)
    ba, k, l = index_a.directed_max_sq(b_sel)
    if cfg.mode == "subset-subset":
        j, l = idx_b[j], idx_a[l]
    res = combine_directed(ab, idx_a[i], j, ba, idx_b[k], l)
    timings["query"] = clock() - t

    dirs = DirectionSet(u0.components[None, :], ("centroid",)) + pcs
    t = clock()
    md = min_delta(a, b, dirs, cfg.delta_centered)
    timings["bound"] = clock() - t
    timings["total"] = clock() - t_start

    return ProHdReport(
        estimate=res.value,
        exact_on_subsets=res,
        size_a=int(idx_a.size),
        size_b=int(idx_b.size),
        min_delta=md,
        bound_upper=res.value + 2.0 * md,
        directions_used=dirs,
        timings=timings,
        idx_a=idx_a,
        idx_b=idx_b,
        m=m,
        mode=cfg.mode,
    )

"""Sampling baselines: uniform and systematic subsampling, then exact Hausdorff.

Randomness comes from a PCG64 stream per cloud, spawned from one
``SeedSequence``: cloud A draws from child 0 and cloud B from child 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import PointCloud, as_cloud, check_same_dim
from .index import hausdorff_via_index
from .selection import ceil_count, check_alpha

SCHEMES = ("uniform", "systematic")


@dataclass(frozen=True)
class SampleSpec:
    alpha: float
    seed: int = 0
    scheme: str = "uniform"

    def __post_init__(self):
        check_alpha(self.alpha)
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")


@dataclass(frozen=True)
class SampleEstimate:
    estimate: float
    size_a: int
    size_b: int
    idx_a: np.ndarray
    idx_b: np.ndarray

    def __iter__(self):
        # unpacks as (estimate, size_a, size_b)
        return iter((self.estimate, self.size_a, self.size_b))


def _streams(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    ss_a, ss_b = np.random.SeedSequence(seed).spawn(2)
    return np.random.Generator(np.random.PCG64(ss_a)), np.random.Generator(np.random.PCG64(ss_b))


def uniform_sample(n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` distinct indices from ``range(n)``, sorted."""
    size = min(int(size), n)
    return np.sort(rng.choice(n, size=size, replace=False))


def systematic_stride(alpha: float) -> int:
    # one part in 1e9 slack so 1/0.2 floors to 5, not 4
    return math.floor(1.0 / alpha + 1e-9)


def systematic_sample(n: int, stride: int, rng: np.random.Generator) -> np.ndarray:
    """Every ``stride``-th entry of a random permutation of ``range(n)``, starting at 0."""
    return np.sort(rng.permutation(n)[::stride])


def _estimate(a: PointCloud, b: PointCloud, ia: np.ndarray, ib: np.ndarray) -> SampleEstimate:
    res = hausdorff_via_index(a.take(ia), b.take(ib))
    return SampleEstimate(res.value, int(ia.size), int(ib.size), ia, ib)


def random_sampling_hd(a, b, spec: SampleSpec, sizes: tuple[int, int] | None = None) -> SampleEstimate:
    """Hausdorff distance between uniform random subsets of ``a`` and ``b``.

    Each cloud contributes ``max(1, ceil(alpha * n))`` points unless
    ``sizes`` fixes the per-cloud counts, e.g. to match another method.
    """
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    if spec.scheme != "uniform":
        raise ValueError("random_sampling_hd needs scheme='uniform'")
    if sizes is None:
        sizes = (ceil_count(spec.alpha, a.n), ceil_count(spec.alpha, b.n))
    if min(sizes) < 1:
        raise ValueError("sample sizes must be positive")
    ra, rb = _streams(spec.seed)
    return _estimate(a, b, uniform_sample(a.n, sizes[0], ra), uniform_sample(b.n, sizes[1], rb))


def systematic_sampling_hd(a, b, spec: SampleSpec) -> SampleEstimate:
    """Hausdorff distance between systematic samples of ``a`` and ``b``.

    Each cloud is shuffled and every ``floor(1/alpha)``-th point kept, giving
    ``ceil(n / stride)`` points. ``alpha`` must be below 1/2.
    """
    a, b = as_cloud(a), as_cloud(b)
    check_same_dim(a, b)
    if spec.scheme != "systematic":
        raise ValueError("systematic_sampling_hd needs scheme='systematic'")
    if spec.alpha >= 0.5:
        raise ValueError(f"systematic sampling needs alpha < 0.5, got {spec.alpha!r}")
    stride = systematic_stride(spec.alpha)
    ra, rb = _streams(spec.seed)
    return _estimate(a, b, systematic_sample(a.n, stride, ra), systematic_sample(b.n, stride, rb))


def sampling_hd(a, b, spec: SampleSpec) -> SampleEstimate:
    if spec.scheme == "uniform":
        return random_sampling_hd(a, b, spec)
    return systematic_sampling_hd(a, b, spec)

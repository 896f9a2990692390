"""Exact and projection-guided approximate Hausdorff distances between point clouds."""

from ._accel import backend_name, set_threads, threads
from .baselines import SampleSpec, random_sampling_hd, systematic_sampling_hd
from .cloudio import CloudFile, read_cloud, write_cloud
from .errors import (
    BadMagicError,
    CloudFormatError,
    DimensionMismatchError,
    InvalidCloudError,
    NonFiniteValueError,
    ProHDError,
    RaggedRowError,
    TruncatedPayloadError,
)
from .estimator import (
    ProHdConfig,
    ProHdReport,
    min_delta,
    multi_direction_hausdorff,
    num_components,
    prohd_directions,
    proj_hausdorff,
)
from .geometry import (
    Direction,
    HausdorffResult,
    PointCloud,
    centroid,
    delta,
    hausdorff_bruteforce,
    project,
    projected_hausdorff_1d,
)
from .harness import generate_random_clouds, relative_error, run_experiment
from .index import FlatIndex, build_flat_index, hausdorff_via_index, nearest
from .selection import (
    DirectionSet,
    SelectionResult,
    centroid_indices,
    extreme_indices,
    pca_proj_indices,
    pca_top_components,
)

__version__ = "0.1.0"

"""Whale-swarm k-medoids clustering for time series.

A small numpy library: UCR-style dataset handling, windowed DTW and
squared Euclidean distances, a PAM baseline, a whale-optimization medoid
search, clustering metrics, and a benchmark harness
(``whalemedoids-bench`` or ``python -m whalemedoids.bench``).
"""

__version__ = "0.1.0"

from .dataset import Dataset, load_ucr, save_ucr, synth_blobs
from .distance import (
    DtwParams,
    build_matrix,
    cache_key,
    check_matrix,
    dtw,
    euclidean_sq,
    load_matrix,
    save_matrix,
)
from .metrics import (
    RandBreakdown,
    improvement_iteration,
    rand_index,
    speedup,
    unique_medoids,
)
from .pam import ClusteringResult, nearest_assignment, pam, pam_build, pam_swap
from .woa import RunTelemetry, WhalePosition, WoaParams

__all__ = [
    "Dataset",
    "load_ucr",
    "save_ucr",
    "synth_blobs",
    "DtwParams",
    "dtw",
    "euclidean_sq",
    "build_matrix",
    "check_matrix",
    "cache_key",
    "save_matrix",
    "load_matrix",
    "ClusteringResult",
    "pam",
    "pam_build",
    "pam_swap",
    "nearest_assignment",
    "WoaParams",
    "WhalePosition",
    "RunTelemetry",
    "RandBreakdown",
    "rand_index",
    "unique_medoids",
    "speedup",
    "improvement_iteration",
    "__version__",
]

"""Windowed dynamic time warping, squared Euclidean distance, and matrix assembly.

The DTW local cost is the squared sample difference and the accumulated
value is reported raw: no square root, no path-length normalisation.  A
Sakoe-Chiba band constrains the alignment when a window is given; cell
(i, j) is admissible iff |i - j| <= window.
"""

from __future__ import annotations

import struct
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numba import njit

from .dataset import Dataset

_MAGIC = b"WMDXMAT1"

# float64 matrices up to this many series, float32 beyond (memory ceiling)
FLOAT64_MAX_N = 4096


@dataclass(frozen=True)
class DtwParams:
    """DTW options.  ``window=None`` means an unconstrained alignment."""

    window: int | None = None

    def __post_init__(self):
        if self.window is not None:
            if int(self.window) != self.window or self.window < 0:
                raise ValueError("window must be a non-negative integer or None")
            object.__setattr__(self, "window", int(self.window))


@njit(cache=True, nogil=True)
def _dtw_band(x, y, w):
    # two rolling rows; cells outside the band stay +inf and drop out of min()
    n = x.size
    m = y.size
    prev = np.full(m, np.inf)
    curr = np.full(m, np.inf)
    for i in range(n):
        jlo = i - w if i - w > 0 else 0
        jhi = i + w if i + w < m - 1 else m - 1
        for j in range(m):
            curr[j] = np.inf
        for j in range(jlo, jhi + 1):
            d = x[i] - y[j]
            d = d * d
            if i == 0 and j == 0:
                curr[j] = d
            else:
                best = np.inf
                if j > 0 and curr[j - 1] < best:
                    best = curr[j - 1]
                if i > 0:
                    if prev[j] < best:
                        best = prev[j]
                    if j > 0 and prev[j - 1] < best:
                        best = prev[j - 1]
                curr[j] = d + best
        prev, curr = curr, prev
    return prev[m - 1]


@njit(cache=True, nogil=True)
def _sqeuclidean(x, y):
    s = 0.0
    for i in range(x.size):
        d = x[i] - y[i]
        s += d * d
    return s


@njit(cache=True, nogil=True)
def _dtw_rows(data, lengths, w, start, step, out):
    # fills rows start, start+step, ... mirror cells included
    n = data.shape[0]
    for i in range(start, n, step):
        xi = data[i, : lengths[i]]
        for j in range(i + 1, n):
            v = _dtw_band(xi, data[j, : lengths[j]], w)
            out[i, j] = v
            out[j, i] = v


@njit(cache=True, nogil=True)
def _euclid_rows(data, start, step, out):
    n = data.shape[0]
    for i in range(start, n, step):
        for j in range(i + 1, n):
            v = _sqeuclidean(data[i], data[j])
            out[i, j] = v
            out[j, i] = v


def _as_series(x) -> np.ndarray:
    arr = np.ascontiguousarray(x, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("expected a non-empty 1-D sequence")
    return arr


def dtw(x, y, params: DtwParams | int | None = None) -> float:
    """Accumulated squared-difference DTW cost between two sequences.

    ``params`` may be a DtwParams, a plain window integer, or None for an
    unconstrained alignment.  Sequences of different lengths require a
    window of at least their length difference, otherwise the band never
    reaches the final cell.
    """
    xa = _as_series(x)
    ya = _as_series(y)
    if params is None or isinstance(params, DtwParams):
        window = params.window if isinstance(params, DtwParams) else None
    else:
        window = DtwParams(window=params).window
    if window is not None and window < abs(xa.size - ya.size):
        raise ValueError(
            f"window {window} cannot align lengths {xa.size} and {ya.size}; "
            f"need at least {abs(xa.size - ya.size)}"
        )
    w = window if window is not None else xa.size + ya.size
    return float(_dtw_band(xa, ya, w))


def euclidean_sq(x, y) -> float:
    """Squared Euclidean distance; requires equal lengths."""
    xa = _as_series(x)
    ya = _as_series(y)
    if xa.size != ya.size:
        raise ValueError(f"length mismatch: {xa.size} vs {ya.size}")
    return float(_sqeuclidean(xa, ya))


def matrix_dtype(n: int):
    return np.float64 if n <= FLOAT64_MAX_N else np.float32


def check_matrix(matrix) -> np.ndarray:
    """Validate a pairwise distance matrix; returns it as an ndarray."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("distance matrix must be square")
    if m.shape[0] < 2:
        raise ValueError("distance matrix must cover at least 2 points")
    if not np.isfinite(m).all():
        raise ValueError("distance matrix contains non-finite entries")
    if (m < 0).any():
        raise ValueError("distance matrix contains negative entries")
    if np.diagonal(m).any():
        raise ValueError("distance matrix diagonal must be zero")
    if not np.array_equal(m, m.T):
        raise ValueError("distance matrix must be symmetric")
    return m


def build_matrix(dataset: Dataset, metric: str = "dtw",
                 window: int | None = None, threads: int = 1) -> np.ndarray:
    """Pairwise distance matrix over a dataset.

    Computes the upper triangle with the selected single-pair metric and
    mirrors it; the diagonal is zero.  Entries are stored as float64 up
    to ``FLOAT64_MAX_N`` series and float32 beyond.  ``threads`` splits
    the rows over a thread pool; the result is identical at any count.
    """
    if metric not in ("dtw", "euclidean"):
        raise ValueError(f"unknown metric {metric!r}")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    n = len(dataset)
    lengths = dataset.lengths
    if metric == "euclidean" and not dataset.uniform_length:
        j = int(np.nonzero(lengths != lengths[0])[0][0])
        raise ValueError(
            f"euclidean metric needs equal lengths; series 0 has {lengths[0]} "
            f"samples but series {j} has {lengths[j]}"
        )
    if metric == "dtw" and window is not None:
        spread = int(lengths.max() - lengths.min())
        if window < spread:
            i = int(lengths.argmin())
            j = int(lengths.argmax())
            raise ValueError(
                f"window {window} cannot align series {i} (len {lengths[i]}) "
                f"with series {j} (len {lengths[j]})"
            )
    padded = np.zeros((n, int(lengths.max())), dtype=np.float64)
    for i, s in enumerate(dataset.series):
        padded[i, : s.size] = s
    out = np.zeros((n, n), dtype=matrix_dtype(n))
    if metric == "dtw":
        w = window if window is not None else int(2 * lengths.max())
        kernel = lambda start, step: _dtw_rows(padded, lengths.astype(np.int64), w, start, step, out)
    else:
        kernel = lambda start, step: _euclid_rows(padded, start, step, out)
    if threads == 1:
        kernel(0, 1)
    else:
        # interleaved row stripes balance the triangular workload; writes are disjoint
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(kernel, t, threads) for t in range(threads)]
            for f in futures:
                f.result()
    return out


def cache_key(dataset_name: str, metric: str, window: int | None) -> str:
    """Filename-safe cache key for a (dataset, metric, window) matrix."""
    safe = "".join(ch if ch.isalnum() or ch in "._-" else "_" for ch in dataset_name)
    suffix = metric if window is None else f"{metric}-w{window}"
    return f"{safe}__{suffix}.dmat"


def save_matrix(path: str | Path, matrix: np.ndarray) -> None:
    """Serialise a distance matrix: magic, n, precision flag, upper triangle."""
    m = check_matrix(matrix)
    n = m.shape[0]
    itemsize = m.dtype.itemsize
    if itemsize not in (4, 8):
        raise ValueError("matrix must be float32 or float64")
    iu = np.triu_indices(n, k=1)
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<QB", n, itemsize))
        fh.write(np.ascontiguousarray(m[iu]).tobytes())


def load_matrix(path: str | Path) -> np.ndarray:
    """Read a matrix written by save_matrix; validates header and size."""
    blob = Path(path).read_bytes()
    header = len(_MAGIC) + 9
    if len(blob) < header or blob[: len(_MAGIC)] != _MAGIC:
        raise ValueError(f"{path}: not a distance matrix cache file")
    n, itemsize = struct.unpack("<QB", blob[len(_MAGIC) : header])
    if itemsize not in (4, 8):
        raise ValueError(f"{path}: bad precision flag {itemsize}")
    dtype = np.float64 if itemsize == 8 else np.float32
    expect = n * (n - 1) // 2
    body = np.frombuffer(blob, dtype=dtype, offset=header)
    if body.size != expect:
        raise ValueError(f"{path}: expected {expect} entries, found {body.size}")
    m = np.zeros((n, n), dtype=dtype)
    iu = np.triu_indices(n, k=1)
    m[iu] = body
    m[iu[1], iu[0]] = body
    return m

"""Clustering agreement and efficiency measures."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RandBreakdown:
    """Pair counts behind a Rand index.

    a: pairs together in both partitions; b: pairs apart in both;
    c: together in the first partition only; d: together in the second
    partition only.  a + b + c + d = n(n-1)/2.
    """

    a: int
    b: int
    c: int
    d: int
    ri: float


def _check_labels(predicted, truth) -> tuple[np.ndarray, np.ndarray]:
    p = np.asarray(predicted)
    t = np.asarray(truth)
    if p.ndim != 1 or t.ndim != 1 or p.shape != t.shape:
        raise ValueError("label vectors must be 1-D and the same length")
    if p.size < 2:
        raise ValueError("need at least 2 points to compare partitions")
    return p, t


def _counts_pairs(p: np.ndarray, t: np.ndarray) -> tuple[int, int, int, int]:
    same_p = p[:, None] == p[None, :]
    same_t = t[:, None] == t[None, :]
    iu = np.triu_indices(p.size, k=1)
    sp = same_p[iu]
    st = same_t[iu]
    a = int((sp & st).sum())
    b = int((~sp & ~st).sum())
    c = int((sp & ~st).sum())
    d = int((~sp & st).sum())
    return a, b, c, d


def _comb2(counts: np.ndarray) -> int:
    counts = counts.astype(object)
    return int((counts * (counts - 1) // 2).sum())


def _counts_contingency(p: np.ndarray, t: np.ndarray) -> tuple[int, int, int, int]:
    _, pi = np.unique(p, return_inverse=True)
    _, ti = np.unique(t, return_inverse=True)
    nt = int(ti.max()) + 1
    table = np.bincount(pi * nt + ti, minlength=(int(pi.max()) + 1) * nt)
    n = p.size
    total = n * (n - 1) // 2
    a = _comb2(table)
    same_p = _comb2(np.bincount(pi))
    same_t = _comb2(np.bincount(ti))
    c = same_p - a
    d = same_t - a
    b = total - a - c - d
    return a, b, c, d


# pair enumeration is quadratic in memory; switch to contingency counting above this
PAIR_PATH_MAX_N = 2000


def rand_index(predicted, truth) -> RandBreakdown:
    """Rand index of two partitions with its pair-count breakdown.

    Small inputs are counted by explicit pair enumeration, large ones via
    the contingency table; the two routes agree exactly.
    """
    p, t = _check_labels(predicted, truth)
    if p.size <= PAIR_PATH_MAX_N:
        a, b, c, d = _counts_pairs(p, t)
    else:
        a, b, c, d = _counts_contingency(p, t)
    total = p.size * (p.size - 1) // 2
    return RandBreakdown(a=a, b=b, c=c, d=d, ri=(a + b) / total)


def unique_medoids(population) -> int:
    """Cardinality of the union of the medoid sets in a population."""
    seen: set[int] = set()
    for meds in population:
        seen.update(int(m) for m in np.asarray(meds).ravel())
    return len(seen)


def speedup(baseline_seconds: float, candidate_seconds: float) -> float:
    """baseline / candidate; > 1 means the candidate is faster."""
    if baseline_seconds <= 0 or candidate_seconds <= 0:
        raise ValueError("timings must be positive")
    return baseline_seconds / candidate_seconds


def improvement_iteration(trace, fraction: float = 0.9) -> int:
    """First iteration (1-based) reaching the given share of the total
    fitness improvement along a best-fitness trace."""
    arr = np.asarray(trace, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("trace must be a non-empty 1-D sequence")
    if not np.isfinite(arr).all():
        raise ValueError("trace contains non-finite values")
    if not 0 < fraction <= 1:
        raise ValueError("fraction must be in (0, 1]")
    threshold = arr[0] - fraction * (arr[0] - arr[-1])
    return int(np.nonzero(arr <= threshold)[0][0]) + 1

"""Whale-swarm search over discrete medoid subsets of a distance matrix.

Each whale is a k-dimensional position in continuous index space
[0, n-1].  After every move the position is clamped, rounded to the
nearest integers, and repaired to k distinct indices, so the whale always
denotes a concrete medoid set.  Fitness is the total nearest-medoid
distance; candidate sets leaving any cluster below ``min_cluster_size``
(the medoid counts as a member) receive an infinite sentinel so the
search keeps moving but never reports them.

Moves follow the whale optimization scheme: with probability one half a
whale spirals toward the current prey (the best whale of the pod), and
otherwise it either encircles the prey or, while the shrinking amplitude
still allows steps of magnitude above one, scatters relative to a
randomly chosen pod member.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .distance import check_matrix
from .pam import ClusteringResult, nearest_assignment

INIT_ATTEMPTS = 100


@dataclass(frozen=True)
class WoaParams:
    """Search parameters.

    k : number of medoids
    population : pod size (number of whales)
    iterations : number of update rounds
    min_cluster_size : smallest acceptable cluster, medoid included
    spiral_shape : shape constant of the logarithmic spiral
    seed : seed for the run's random stream
    """

    k: int
    population: int = 50
    iterations: int = 200
    min_cluster_size: int = 2
    spiral_shape: float = 1.0
    seed: int = 0

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.population < 1:
            raise ValueError("population must be >= 1")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.min_cluster_size < 1:
            raise ValueError("min_cluster_size must be >= 1")
        if not np.isfinite(self.spiral_shape):
            raise ValueError("spiral_shape must be finite")


@dataclass
class WhalePosition:
    coords: np.ndarray    # k floats in [0, n-1]
    medoids: np.ndarray   # k distinct integer indices (rounded, repaired coords)
    fitness: float        # total nearest-medoid distance; +inf if any cluster is undersized


@dataclass
class RunTelemetry:
    """Per-iteration record of a whale-search run.

    best_fitness is elitist (the best value seen so far), hence
    non-increasing; unique_medoids counts the union of all whales' medoid
    sets after each round's updates.
    """

    best_fitness: np.ndarray
    unique_medoids: np.ndarray
    best: WhalePosition
    seed: int


def _check_run_shape(n: int, params: WoaParams) -> None:
    if params.k > n:
        raise ValueError(f"k={params.k} exceeds the {n} available points")
    if params.k * params.min_cluster_size > n:
        raise ValueError(
            f"k={params.k} clusters of min_cluster_size={params.min_cluster_size} "
            f"need more than the {n} available points"
        )


def fitness(matrix: np.ndarray, medoids, min_cluster_size: int = 1) -> float:
    """Total nearest-medoid distance of a medoid set.

    Returns +inf when any cluster (medoid included) has fewer than
    ``min_cluster_size`` members.  Assignment ties fall to the earliest
    medoid in the list.  The matrix is assumed already validated.
    """
    meds = np.asarray(medoids, dtype=np.int64).ravel()
    if meds.size == 0:
        raise ValueError("medoid set is empty")
    n = matrix.shape[0]
    if (meds < 0).any() or (meds >= n).any():
        raise ValueError(f"medoid indices must lie in [0, {n - 1}]")
    if np.unique(meds).size != meds.size:
        raise ValueError("medoid indices must be distinct")
    sub = matrix[meds]
    assign = sub.argmin(axis=0)
    counts = np.bincount(assign, minlength=meds.size)
    if (counts < min_cluster_size).any():
        return float("inf")
    return float(sub[assign, np.arange(n)].sum())


def _batch_fitness(matrix: np.ndarray, meds: np.ndarray, min_cluster_size: int) -> np.ndarray:
    # vectorised fitness() over the rows of an (L, k) medoid array; the
    # column-at-a-time minimum keeps reductions on contiguous (L, n)
    # blocks, where an (L, k, n) argmin would reduce over a strided axis
    size, k = meds.shape
    nearest = matrix[meds[:, 0]]
    assign = np.zeros(nearest.shape, dtype=np.int64)
    for j in range(1, k):
        cand = matrix[meds[:, j]]
        closer = cand < nearest
        np.copyto(nearest, cand, where=closer)
        assign[closer] = j
    fit = nearest.sum(axis=1).astype(np.float64)
    counts = np.bincount(
        (assign + (k * np.arange(size))[:, None]).ravel(), minlength=size * k
    ).reshape(size, k)
    fit[(counts < min_cluster_size).any(axis=1)] = np.inf
    return fit


def _memo_fitness(matrix, meds, min_cluster_size, memo) -> np.ndarray:
    # converged pods re-evaluate the same sets each round; cache by exact row
    keys = [row.tobytes() for row in meds]
    missing: dict[bytes, int] = {}
    for i, key in enumerate(keys):
        if key not in memo and key not in missing:
            missing[key] = i
    if missing:
        vals = _batch_fitness(matrix, meds[list(missing.values())], min_cluster_size)
        for key, v in zip(missing, vals):
            memo[key] = float(v)
    return np.array([memo[key] for key in keys], dtype=np.float64)


def _repair_row(row: np.ndarray, n: int, rng) -> None:
    # replace any coordinate duplicating an earlier one with a uniform
    # draw over the indices the whale does not currently hold; rejection
    # sampling keeps that distribution without building the complement
    # (k << n, so acceptance is nearly certain each try)
    for j in range(row.size):
        duplicated = False
        for q in range(j):
            if row[q] == row[j]:
                duplicated = True
                break
        if duplicated:
            while True:
                cand = int(rng.integers(n))
                if cand not in row:
                    row[j] = cand
                    break


def init_population(matrix: np.ndarray, params: WoaParams, rng=None) -> list[WhalePosition]:
    """Scatter whales uniformly over distinct data-point index sets.

    Redraws the whole pod up to INIT_ATTEMPTS times until at least one
    whale is feasible, then returns; raises if none is found.
    """
    matrix = check_matrix(matrix)
    _check_run_shape(matrix.shape[0], params)
    if rng is None:
        rng = np.random.default_rng(params.seed)
    return _init_pod(matrix, params, rng)


def _init_pod(matrix: np.ndarray, params: WoaParams, rng) -> list[WhalePosition]:
    n = matrix.shape[0]
    for _ in range(INIT_ATTEMPTS):
        pod = []
        for _ in range(params.population):
            meds = rng.choice(n, size=params.k, replace=False).astype(np.int64)
            pod.append(
                WhalePosition(
                    coords=meds.astype(np.float64),
                    medoids=meds,
                    fitness=fitness(matrix, meds, params.min_cluster_size),
                )
            )
        if any(np.isfinite(w.fitness) for w in pod):
            return pod
    raise RuntimeError(
        f"no feasible start in {INIT_ATTEMPTS} attempts: cannot fill k={params.k} "
        f"clusters of min_cluster_size={params.min_cluster_size} from {n} points"
    )


def update_whale(matrix: np.ndarray, whale: WhalePosition, prey: WhalePosition,
                 rand_whale: WhalePosition, a: float, rng,
                 params: WoaParams) -> WhalePosition:
    """One move of a single whale.

    Draws, in order: a length-k uniform vector r, a scalar p, and a
    scalar l in [-1, 1].  p >= 0.5 selects the spiral move; otherwise the
    amplitude vector A = 2*a*r - a selects encircling (all |A| <= 1) or
    scattering relative to ``rand_whale``.  The result is clamped,
    rounded, repaired to distinct indices (consuming further draws only
    on collisions), and re-evaluated.
    """
    n = matrix.shape[0]
    r = rng.random(params.k)
    p = float(rng.random())
    spiral_l = float(rng.uniform(-1.0, 1.0))
    amplitude = 2.0 * a * r - a
    swirl = 2.0 * r
    if p >= 0.5:
        target = (
            np.abs(prey.coords - whale.coords)
            * np.exp(params.spiral_shape * spiral_l)
            * np.cos(2.0 * np.pi * spiral_l)
            + prey.coords
        )
    elif np.abs(amplitude).max() <= 1.0:
        target = prey.coords - amplitude * np.abs(swirl * prey.coords - whale.coords)
    else:
        target = rand_whale.coords - amplitude * np.abs(swirl * rand_whale.coords - whale.coords)
    meds = np.rint(np.clip(target, 0, n - 1)).astype(np.int64)
    _repair_row(meds, n, rng)
    return WhalePosition(
        coords=meds.astype(np.float64),
        medoids=meds,
        fitness=fitness(matrix, meds, params.min_cluster_size),
    )


def run(matrix: np.ndarray, params: WoaParams) -> tuple[ClusteringResult, RunTelemetry]:
    """Full whale search over a distance matrix.

    Per round: pick the prey (feasible whale of minimum fitness, ties to
    the lowest index; the elitist best stands in if the whole pod is
    momentarily infeasible), move every whale synchronously against the
    round-start pod with amplitude schedule a = 2 - 2*t/iterations,
    re-evaluate, then record telemetry.  The reported result is the best
    feasible position ever seen.  wall_time excludes matrix construction.
    """
    matrix = check_matrix(matrix)
    n = matrix.shape[0]
    _check_run_shape(n, params)
    t0 = time.perf_counter()
    rng = np.random.default_rng(params.seed)
    pod = _init_pod(matrix, params, rng)
    coords = np.stack([w.coords for w in pod])
    meds = np.stack([w.medoids for w in pod])
    fit = np.array([w.fitness for w in pod])
    memo = {row.tobytes(): float(f) for row, f in zip(meds, fit)}

    pod_size, k, rounds = params.population, params.k, params.iterations
    shape = params.spiral_shape
    gi = int(fit.argmin())
    best_meds = meds[gi].copy()
    best_fit = float(fit[gi])
    trace_fit = np.empty(rounds)
    trace_unique = np.empty(rounds, dtype=np.int64)

    for t in range(1, rounds + 1):
        if np.isfinite(fit).any():
            prey = coords[int(fit.argmin())]
        else:
            prey = best_meds.astype(np.float64)
        a = 2.0 - 2.0 * t / rounds
        r = rng.random((pod_size, k))
        p = rng.random(pod_size)
        spiral_l = rng.uniform(-1.0, 1.0, pod_size)
        rand_idx = rng.integers(0, pod_size, pod_size)
        amplitude = 2.0 * a * r - a
        swirl = 2.0 * r
        spiral = (
            np.abs(prey - coords)
            * np.exp(shape * spiral_l)[:, None]
            * np.cos(2.0 * np.pi * spiral_l)[:, None]
            + prey
        )
        encircle = prey - amplitude * np.abs(swirl * prey - coords)
        rand_coords = coords[rand_idx]
        scatter = rand_coords - amplitude * np.abs(swirl * rand_coords - coords)
        exploit = (np.abs(amplitude).max(axis=1) <= 1.0)[:, None]
        target = np.where(p[:, None] >= 0.5, spiral, np.where(exploit, encircle, scatter))
        meds = np.rint(np.clip(target, 0, n - 1)).astype(np.int64)
        # repair draws happen only on actual collisions, so pre-filtering
        # collision-free rows leaves the stream consumption unchanged
        ordered = np.sort(meds, axis=1)
        for w in np.nonzero((ordered[:, 1:] == ordered[:, :-1]).any(axis=1))[0]:
            _repair_row(meds[w], n, rng)
        coords = meds.astype(np.float64)
        fit = _memo_fitness(matrix, meds, params.min_cluster_size, memo)
        mi = int(fit.argmin())
        if fit[mi] < best_fit:
            best_fit = float(fit[mi])
            best_meds = meds[mi].copy()
        trace_fit[t - 1] = best_fit
        trace_unique[t - 1] = np.unique(meds).size

    wall = time.perf_counter() - t0
    assignment, _ = nearest_assignment(matrix, best_meds)
    result = ClusteringResult(
        medoids=[int(m) for m in best_meds],
        assignment=assignment,
        total_cost=best_fit,
        steps=rounds,
        wall_time=wall,
    )
    telemetry = RunTelemetry(
        best_fitness=trace_fit,
        unique_medoids=trace_unique,
        best=WhalePosition(best_meds.astype(np.float64), best_meds, best_fit),
        seed=params.seed,
    )
    return result, telemetry

"""Tour of the distance layer: single pairs, windows, matrices, caching."""

import tempfile
from pathlib import Path

import numpy as np

from whalemedoids.dataset import synth_blobs
from whalemedoids.distance import build_matrix, cache_key, dtw, euclidean_sq, load_matrix, save_matrix


def main():
    rng = np.random.default_rng(3)
    x = np.sin(np.linspace(0, 2 * np.pi, 24)) + rng.normal(0, 0.05, 24)
    y = np.sin(np.linspace(0.4, 2 * np.pi + 0.4, 24)) + rng.normal(0, 0.05, 24)

    print("== one pair, several windows ==")
    print(f"squared euclidean          {euclidean_sq(x, y):10.4f}")
    for w in (0, 1, 2, 4, 8, None):
        label = "unconstrained" if w is None else f"w={w}"
        print(f"dtw {label:<14} {dtw(x, y, w):10.4f}")
    print("note: w=0 equals the euclidean value and wider windows only help")

    print()
    print("== shifted copies ==")
    # a lag of two samples is invisible to dtw once the window admits it
    z = np.roll(x, 2)
    print(f"euclidean vs 2-step shift  {euclidean_sq(x, z):10.4f}")
    print(f"dtw w=1                    {dtw(x, z, 1):10.4f}")
    print(f"dtw w=2                    {dtw(x, z, 2):10.4f}")

    print()
    print("== full matrix and cache round trip ==")
    data = synth_blobs(n_per_cluster=15, k=3, length=32, noise=0.15, seed=7)
    matrix = build_matrix(data, metric="dtw", window=2, threads=2)
    print(f"dataset {data.name}: {len(data)} series")
    print(f"matrix shape {matrix.shape}, dtype {matrix.dtype}")
    print(f"mean off-diagonal distance {matrix.sum() / (len(data) * (len(data) - 1)):.4f}")
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / cache_key(data.name, "dtw", 2)
        save_matrix(path, matrix)
        again = load_matrix(path)
        print(f"cache file {path.name}: {path.stat().st_size} bytes, "
              f"round trip exact: {np.array_equal(matrix, again)}")


if __name__ == "__main__":
    main()

"""Watching the whale search move: fitness descent and pod diversity."""

import numpy as np

from whalemedoids.dataset import synth_blobs
from whalemedoids.distance import build_matrix
from whalemedoids.metrics import improvement_iteration, rand_index
from whalemedoids.pam import pam
from whalemedoids.woa import WoaParams, run


def main():
    data = synth_blobs(n_per_cluster=50, k=4, length=32, noise=0.3, seed=5)
    matrix = build_matrix(data, metric="euclidean")
    print(f"dataset {data.name}: {len(data)} series")

    params = WoaParams(k=4, population=50, iterations=200, seed=0)
    result, tel = run(matrix, params)

    print()
    print("round   best fitness   distinct medoid ids in pod")
    for t in (0, 4, 9, 19, 49, 99, 149, 199):
        bar = "#" * (tel.unique_medoids[t] // 4)
        print(f"{t + 1:5d}   {tel.best_fitness[t]:12.3f}   {tel.unique_medoids[t]:3d} {bar}")

    print()
    hit = improvement_iteration(tel.best_fitness, 0.9)
    print(f"90% of the total improvement was in by round {hit} of {params.iterations}")
    print(f"best medoids {sorted(result.medoids)}  cost {result.total_cost:.3f}")
    print(f"rand index {rand_index(result.assignment, data.labels).ri:.4f}")

    print()
    print("== against the exchange baseline ==")
    baseline = pam(matrix, 4)
    print(f"pam   cost {baseline.total_cost:.3f}  ri "
          f"{rand_index(baseline.assignment, data.labels).ri:.4f}")
    gap = (result.total_cost - baseline.total_cost) / baseline.total_cost
    print(f"whale cost is {gap * 100:+.2f}% relative to pam")

    print()
    print("== seed sensitivity ==")
    costs = []
    for seed in range(5):
        r, _ = run(matrix, WoaParams(k=4, population=50, iterations=200, seed=seed))
        costs.append(r.total_cost)
        print(f"seed {seed}: cost {r.total_cost:.3f}  medoids {sorted(r.medoids)}")
    print(f"spread across seeds: {max(costs) - min(costs):.4f}")


if __name__ == "__main__":
    main()

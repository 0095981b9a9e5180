"""PAM against hand examples and exhaustive search on small instances."""

from itertools import combinations

import numpy as np
import pytest

from whalemedoids.pam import (
    ClusteringResult,
    nearest_assignment,
    pam,
    pam_build,
    pam_swap,
)


def line_matrix(points):
    pts = np.asarray(points, dtype=np.float64)
    return np.abs(pts[:, None] - pts[None, :])


def random_matrix(rng, n):
    m = rng.random((n, n))
    m = (m + m.T) / 2.0
    np.fill_diagonal(m, 0.0)
    return m


def exhaustive_optimum(matrix, k):
    n = matrix.shape[0]
    best_cost = np.inf
    best = None
    for combo in combinations(range(n), k):
        cost = matrix[list(combo)].min(axis=0).sum()
        if cost < best_cost:
            best_cost = cost
            best = combo
    return best, float(best_cost)


def test_single_medoid_on_a_line():
    m = line_matrix([0.0, 1.0, 10.0])
    result = pam(m, 1)
    assert result.medoids == [1]
    assert result.total_cost == 10.0


def test_two_clusters_on_a_line():
    m = line_matrix([0.0, 1.0, 2.0, 10.0, 11.0, 12.0])
    result = pam(m, 2)
    assert sorted(result.medoids) == [1, 4]
    assert result.total_cost == 4.0
    assert np.array_equal(result.assignment, [0, 0, 0, 1, 1, 1])


def test_swap_not_worse_than_build():
    rng = np.random.default_rng(21)
    for _ in range(40):
        n = int(rng.integers(8, 15))
        k = int(rng.integers(2, 4))
        m = random_matrix(rng, n)
        build_meds = pam_build(m, k)
        _, build_dist = nearest_assignment(m, build_meds)
        assert pam(m, k).total_cost <= build_dist.sum()


def test_reaches_exhaustive_optimum_usually():
    rng = np.random.default_rng(22)
    hits = 0
    trials = 60
    for _ in range(trials):
        n = int(rng.integers(8, 13))
        k = int(rng.integers(2, 4))
        m = random_matrix(rng, n)
        _, opt_cost = exhaustive_optimum(m, k)
        got = pam(m, k).total_cost
        assert got >= opt_cost - 1e-12  # never better than the true optimum
        if got <= opt_cost + 1e-12:
            hits += 1
    assert hits / trials >= 0.85


def test_cost_trace_strictly_decreasing():
    rng = np.random.default_rng(23)
    for _ in range(30):
        m = random_matrix(rng, int(rng.integers(10, 16)))
        result = pam(m, 3)
        trace = result.cost_trace
        assert trace is not None
        assert len(trace) == result.steps + 1
        assert all(b < a for a, b in zip(trace, trace[1:]))
        assert trace[-1] == result.total_cost


def test_swap_at_optimum_is_a_fixed_point():
    m = line_matrix([0.0, 1.0, 2.0, 10.0, 11.0, 12.0])
    best, cost = exhaustive_optimum(m, 2)
    result = pam_swap(m, list(best))
    assert result.steps == 0
    assert result.total_cost == cost
    assert sorted(result.medoids) == sorted(best)


def test_all_points_as_medoids():
    m = line_matrix([3.0, 1.0, 4.0, 1.5])
    result = pam(m, 4)
    assert sorted(result.medoids) == [0, 1, 2, 3]
    assert result.total_cost == 0.0


def test_determinism():
    m = random_matrix(np.random.default_rng(24), 20)
    a = pam(m, 4)
    b = pam(m, 4)
    assert a.medoids == b.medoids
    assert a.cost_trace == b.cost_trace
    assert np.array_equal(a.assignment, b.assignment)


def test_assignment_ties_go_to_earliest_medoid():
    m = line_matrix([0.0, 1.0, 2.0])
    assignment, dist = nearest_assignment(m, [0, 2])
    assert assignment[1] == 0  # equidistant, first listed medoid wins
    assert dist[1] == 1.0


def test_result_shape():
    m = random_matrix(np.random.default_rng(25), 12)
    result = pam(m, 3)
    assert isinstance(result, ClusteringResult)
    assert len(result.medoids) == 3
    assert len(set(result.medoids)) == 3
    assert result.assignment.shape == (12,)
    assert result.wall_time >= 0.0
    recomputed = m[result.medoids].min(axis=0).sum()
    assert result.total_cost == pytest.approx(recomputed, abs=1e-12)


def test_k_out_of_range():
    m = line_matrix([0.0, 1.0, 2.0])
    with pytest.raises(ValueError, match="k=0"):
        pam(m, 0)
    with pytest.raises(ValueError, match="k=4"):
        pam(m, 4)


def test_swap_rejects_bad_medoids():
    m = line_matrix([0.0, 1.0, 2.0, 3.0])
    with pytest.raises(ValueError, match="distinct"):
        pam_swap(m, [1, 1])
    with pytest.raises(ValueError, match="range"):
        pam_swap(m, [0, 7])
    with pytest.raises(ValueError, match="range"):
        pam_swap(m, [])


def test_invalid_matrix_is_rejected_everywhere():
    bad = np.array([[0.0, 1.0], [2.0, 0.0]])  # asymmetric
    for call in (lambda: pam(bad, 1),
                 lambda: pam_build(bad, 1),
                 lambda: pam_swap(bad, [0])):
        with pytest.raises(ValueError, match="symmetric"):
            call()

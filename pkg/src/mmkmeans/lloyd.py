"""Standard K-means: random-sample init, assign/update loop, movement stop."""

from __future__ import annotations

import secrets
import time

import numpy as np

from .model import FitResult, IterationRecord, RunConfig, RunTrace, objective_complete
from .validation import check_assignment, check_centroids, check_points


def resolve_seed(seed: int | None) -> int:
    return secrets.randbits(64) if seed is None else int(seed)


def init_random_samples(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Pick k distinct sample rows as the initial centroids."""
    points = check_points(points)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > points.shape[0]:
        raise ValueError(f"cannot pick {k} distinct samples from {points.shape[0]} rows")
    indices = rng.choice(points.shape[0], size=k, replace=False)
    return points[indices].copy()


def assign_step(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    """Assign every sample to its nearest centroid, ties to the lowest id."""
    points = check_points(points, allow_nan=False)
    centroids = check_centroids(centroids, n_features=points.shape[1])
    diff = points[:, None, :] - centroids[None, :, :]
    distances = np.einsum("ikj,ikj->ik", diff, diff)
    # argmin returns the first minimal index, which is the tie rule we want
    return distances.argmin(axis=1)


def centroid_update_step(
    points: np.ndarray,
    assignment: np.ndarray,
    k: int,
    previous: np.ndarray,
) -> np.ndarray:
    """Move each centroid to the mean of its members.

    A cluster with no members keeps its previous centroid.
    """
    points = check_points(points)
    previous = check_centroids(previous, n_features=points.shape[1])
    if previous.shape[0] != k:
        raise ValueError(f"previous centroids have K={previous.shape[0]}, expected {k}")
    assignment = check_assignment(assignment, points.shape[0], k)
    centroids = previous.copy()
    for c in range(k):
        members = assignment == c
        if members.any():
            centroids[c] = points[members].mean(axis=0)
    return centroids


def centroid_movement(current: np.ndarray, previous: np.ndarray) -> float:
    """Summed squared displacement of all centroids between two snapshots."""
    delta = current - previous
    return float(np.sum(delta * delta))


def run_lloyd(
    points: np.ndarray,
    config: RunConfig,
    initial_centroids: np.ndarray | None = None,
) -> FitResult:
    """Run K-means to convergence or the iteration cap.

    The loop alternates assignment and centroid update; it stops as soon as
    the centroid movement drops to ``config.epsilon`` or ``config.max_iter``
    iterations have run. ``initial_centroids`` overrides the random-sample
    initialization (useful for reproducing a run exactly).
    """
    points = check_points(points)
    seed = resolve_seed(config.seed)
    started = time.perf_counter()
    if initial_centroids is None:
        rng = np.random.default_rng(seed)
        centroids = init_random_samples(points, config.k, rng)
    else:
        centroids = check_centroids(initial_centroids, n_features=points.shape[1]).copy()
        if centroids.shape[0] != config.k:
            raise ValueError(f"initial centroids have K={centroids.shape[0]}, expected {config.k}")

    trace = RunTrace()
    assignment = None
    for n in range(1, config.max_iter + 1):
        assignment = assign_step(points, centroids)
        updated = centroid_update_step(points, assignment, config.k, centroids)
        movement = centroid_movement(updated, centroids)
        objective = objective_complete(points, assignment, updated)
        trace.iterations.append(IterationRecord(n, updated.copy(), objective, movement))
        centroids = updated
        if movement <= config.epsilon:
            trace.converged = True
            break
    trace.elapsed = time.perf_counter() - started
    return FitResult(centroids=centroids, assignment=assignment, trace=trace, seed=seed)

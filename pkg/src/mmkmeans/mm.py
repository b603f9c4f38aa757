"""K-means on incomplete data via per-iteration centroid imputation.

Unobserved coordinates are filled in before each assignment round with the
matching coordinate of the sample's current centroid, which restores a
complete working matrix and lets the standard assign/update steps run
unchanged. Each full iteration drives a surrogate upper bound of the
observed-coordinate objective downhill, so the recorded objective never
increases.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .lloyd import (
    assign_step,
    centroid_movement,
    centroid_update_step,
    init_random_samples,
    resolve_seed,
)
from .model import FitResult, IterationRecord, RunConfig, RunTrace, objective_observed
from .validation import check_assignment, check_centroids, check_mask, check_points


@dataclass
class CompletedDataset:
    """A working copy of an incomplete sample matrix.

    Observed slots always hold the source values; unobserved slots are
    rewritten by the imputation steps. ``unobserved_rows``/``unobserved_cols``
    list the fillable slots in row-major order, which fixes the order of
    random draws during the initial imputation.
    """

    working: np.ndarray
    observed: np.ndarray
    source: np.ndarray

    @classmethod
    def create(cls, points: np.ndarray, observed: np.ndarray) -> "CompletedDataset":
        points = check_points(points, allow_nan=True)
        observed = check_mask(observed, points.shape)
        if not np.isfinite(points[observed]).all():
            raise ValueError("observed entries must be finite")
        return cls(working=points.copy(), observed=observed, source=points)

    def __post_init__(self):
        rows, cols = np.nonzero(~self.observed)
        self.unobserved_rows = rows
        self.unobserved_cols = cols

    @property
    def n_unobserved(self) -> int:
        return self.unobserved_rows.size


def fully_observed_rows(observed: np.ndarray) -> np.ndarray:
    return np.flatnonzero(observed.all(axis=1))


def init_fully_observed(
    points: np.ndarray,
    observed: np.ndarray,
    k: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Pick k distinct fully-observed rows as initial centroids.

    When fewer than k rows are fully observed, the k rows with the most
    observed coordinates are taken instead (ties by row index) and their
    missing coordinates are filled with the per-feature mean over all
    observed entries. With an all-true mask this consumes the random stream
    exactly like :func:`init_random_samples`.
    """
    points = check_points(points, allow_nan=True)
    observed = check_mask(observed, points.shape)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > points.shape[0]:
        raise ValueError(f"cannot pick {k} centroids from {points.shape[0]} rows")
    candidates = fully_observed_rows(observed)
    if candidates.size >= k:
        chosen = rng.choice(candidates, size=k, replace=False)
        return points[chosen].copy()

    order = np.argsort(-observed.sum(axis=1), kind="stable")[:k]
    centroids = points[order].copy()
    sums = np.where(observed, points, 0.0).sum(axis=0)
    counts = observed.sum(axis=0)
    # a feature observed nowhere has no mean to offer; fall back to 0.0
    feature_means = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    holes = ~observed[order]
    centroids[holes] = np.broadcast_to(feature_means, centroids.shape)[holes]
    return centroids


def initial_imputation(
    completed: CompletedDataset,
    centroids: np.ndarray,
    rng: np.random.Generator,
) -> None:
    """Fill every unobserved slot with the matching coordinate of a centroid
    chosen independently and uniformly per slot."""
    centroids = check_centroids(centroids, n_features=completed.working.shape[1])
    if completed.n_unobserved == 0:
        return
    picks = rng.integers(0, centroids.shape[0], size=completed.n_unobserved)
    completed.working[completed.unobserved_rows, completed.unobserved_cols] = centroids[
        picks, completed.unobserved_cols
    ]


def impute_step(
    completed: CompletedDataset,
    assignment: np.ndarray,
    centroids: np.ndarray,
) -> None:
    """Overwrite each unobserved slot with its row's assigned-centroid coordinate."""
    centroids = check_centroids(centroids, n_features=completed.working.shape[1])
    assignment = check_assignment(assignment, completed.working.shape[0], centroids.shape[0])
    if completed.n_unobserved == 0:
        return
    rows, cols = completed.unobserved_rows, completed.unobserved_cols
    completed.working[rows, cols] = centroids[assignment[rows], cols]


def run_mm(
    points: np.ndarray,
    observed: np.ndarray,
    config: RunConfig,
    initial_centroids: np.ndarray | None = None,
) -> FitResult:
    """Run the missing-data K-means variant.

    Initialization picks fully-observed rows and randomly imputes the
    unobserved slots; the loop then alternates assignment and centroid
    update on the working matrix followed by the imputation step. The trace
    records the observed-coordinate objective evaluated after imputing, and
    the stopping rule is identical to :func:`run_lloyd`. With an all-true
    mask and the same seed the run is iteration-for-iteration identical to
    :func:`run_lloyd`.
    """
    points = check_points(points, allow_nan=True)
    observed = check_mask(observed, points.shape)
    seed = resolve_seed(config.seed)
    started = time.perf_counter()
    rng = np.random.default_rng(seed)
    if initial_centroids is None:
        centroids = init_fully_observed(points, observed, config.k, rng)
    else:
        centroids = check_centroids(initial_centroids, n_features=points.shape[1]).copy()
        if centroids.shape[0] != config.k:
            raise ValueError(f"initial centroids have K={centroids.shape[0]}, expected {config.k}")
    completed = CompletedDataset.create(points, observed)
    initial_imputation(completed, centroids, rng)

    trace = RunTrace()
    assignment = None
    for n in range(1, config.max_iter + 1):
        assignment = assign_step(completed.working, centroids)
        updated = centroid_update_step(completed.working, assignment, config.k, centroids)
        movement = centroid_movement(updated, centroids)
        impute_step(completed, assignment, updated)
        objective = objective_observed(points, observed, assignment, updated)
        trace.iterations.append(IterationRecord(n, updated.copy(), objective, movement))
        centroids = updated
        if movement <= config.epsilon:
            trace.converged = True
            break
    trace.elapsed = time.perf_counter() - started
    return FitResult(centroids=centroids, assignment=assignment, trace=trace, seed=seed)

"""Shared data types and the clustering objective functions.

The three objectives evaluated here are the within-cluster sum of squares
on complete data, its restriction to observed coordinates, and the
surrogate upper bound used by the missing-data solver. All of them are
pure functions; summation runs cluster-by-cluster in index order so that
repeated evaluations on identical inputs are bit-for-bit reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .validation import check_assignment, check_centroids, check_labels, check_mask, check_points


@dataclass(frozen=True)
class Dataset:
    """A sample matrix plus optional ground-truth labels."""

    points: np.ndarray
    labels: np.ndarray | None = None

    def __post_init__(self):
        points = check_points(self.points)
        object.__setattr__(self, "points", points)
        if self.labels is not None:
            labels = check_labels(self.labels, n_samples=points.shape[0])
            object.__setattr__(self, "labels", labels)

    @property
    def n_samples(self) -> int:
        return self.points.shape[0]

    @property
    def n_features(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class RunConfig:
    """Solver settings: cluster count, stopping threshold, iteration cap, seed.

    ``seed`` may be None, in which case the solver draws one from OS entropy
    and records the value it used in the fit result.
    """

    k: int
    epsilon: float = 1e-6
    max_iter: int = 100
    seed: int | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.epsilon < 0:
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if self.seed is not None and not 0 <= int(self.seed) < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")


@dataclass(frozen=True)
class IterationRecord:
    """One solver iteration: index, centroid snapshot, objective, movement.

    ``movement`` is the summed squared displacement of all centroids since
    the previous iteration (against the initial centroids for n=1).
    """

    n: int
    centroids: np.ndarray
    objective: float
    movement: float


@dataclass
class RunTrace:
    iterations: list[IterationRecord] = field(default_factory=list)
    converged: bool = False
    elapsed: float = 0.0


@dataclass(frozen=True)
class FitResult:
    """Output of one solver run: centroids, final assignment, trace, seed used."""

    centroids: np.ndarray
    assignment: np.ndarray
    trace: RunTrace
    seed: int

    @property
    def n_clusters(self) -> int:
        return self.centroids.shape[0]


def squared_distance(a, b) -> float:
    """Squared Euclidean distance between two equal-length vectors."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"expected two equal-length vectors, got shapes {a.shape} and {b.shape}")
    d = a - b
    return float(np.dot(d, d))


def objective_complete(points, assignment, centroids) -> float:
    """Within-cluster sum of squares over all coordinates."""
    points = check_points(points)
    centroids = check_centroids(centroids, n_features=points.shape[1])
    assignment = check_assignment(assignment, points.shape[0], centroids.shape[0])
    total = 0.0
    for k in range(centroids.shape[0]):
        diff = points[assignment == k] - centroids[k]
        total += float(np.sum(diff * diff))
    return total


def objective_observed(points, observed, assignment, centroids) -> float:
    """Within-cluster sum of squares restricted to observed coordinates.

    Unobserved entries contribute nothing; rows with no observed entries are
    legal and contribute zero.
    """
    points = check_points(points, allow_nan=True)
    observed = check_mask(observed, points.shape)
    centroids = check_centroids(centroids, n_features=points.shape[1])
    assignment = check_assignment(assignment, points.shape[0], centroids.shape[0])
    total = 0.0
    for k in range(centroids.shape[0]):
        rows = assignment == k
        diff = points[rows] - centroids[k]
        # where() keeps NaNs stored at unobserved slots out of the sum
        total += float(np.sum(np.where(observed[rows], diff * diff, 0.0)))
    return total


def majorizer(points, observed, assignment, centroids, anchor) -> float:
    """Surrogate upper bound of the observed objective, anchored at ``anchor``.

    Adds to the observed objective one squared anchor-to-centroid deviation
    per unobserved coordinate. Equals the observed objective exactly when
    ``centroids`` is ``anchor`` (tangency) and never falls below it
    (domination), since the added terms are squares.
    """
    points = check_points(points, allow_nan=True)
    observed = check_mask(observed, points.shape)
    centroids = check_centroids(centroids, n_features=points.shape[1])
    anchor = check_centroids(anchor, n_features=points.shape[1])
    if anchor.shape != centroids.shape:
        raise ValueError(f"anchor shape {anchor.shape} does not match centroids shape {centroids.shape}")
    assignment = check_assignment(assignment, points.shape[0], centroids.shape[0])

    value = objective_observed(points, observed, assignment, centroids)
    for k in range(centroids.shape[0]):
        unobserved_counts = np.sum(~observed[assignment == k], axis=0)
        gap = anchor[k] - centroids[k]
        value += float(np.sum(unobserved_counts * gap * gap))
    return value

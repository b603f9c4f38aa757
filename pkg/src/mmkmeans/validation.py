"""Input validation helpers shared by the solvers, metrics and estimators."""

from __future__ import annotations

import numpy as np


def check_points(X, *, allow_nan: bool = False) -> np.ndarray:
    """Coerce X to a 2-D float64 sample matrix and validate it.

    With ``allow_nan=True`` NaN entries are accepted (they mark unobserved
    slots); infinities are always rejected.
    """
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D sample matrix, got shape {X.shape}")
    if X.shape[0] < 1 or X.shape[1] < 1:
        raise ValueError(f"sample matrix must be at least 1x1, got shape {X.shape}")
    if allow_nan:
        if np.isinf(X).any():
            raise ValueError("sample matrix contains infinite values")
    elif not np.isfinite(X).all():
        raise ValueError("sample matrix contains non-finite values")
    return X


def check_mask(mask, shape: tuple[int, int]) -> np.ndarray:
    """Coerce to a boolean observation mask matching ``shape``."""
    mask = np.asarray(mask)
    if mask.dtype != bool:
        raise ValueError(f"observation mask must be boolean, got dtype {mask.dtype}")
    if mask.shape != tuple(shape):
        raise ValueError(f"observation mask shape {mask.shape} does not match data shape {tuple(shape)}")
    return mask


def check_centroids(centroids, n_features: int | None = None) -> np.ndarray:
    centroids = np.asarray(centroids, dtype=np.float64)
    if centroids.ndim != 2 or centroids.shape[0] < 1:
        raise ValueError(f"expected a K x d centroid matrix, got shape {centroids.shape}")
    if not np.isfinite(centroids).all():
        raise ValueError("centroid matrix contains non-finite values")
    if n_features is not None and centroids.shape[1] != n_features:
        raise ValueError(
            f"centroids have {centroids.shape[1]} features, data has {n_features}"
        )
    return centroids


def check_assignment(assignment, n_samples: int, n_clusters: int) -> np.ndarray:
    assignment = np.asarray(assignment)
    if assignment.ndim != 1 or assignment.shape[0] != n_samples:
        raise ValueError(
            f"assignment must be a length-{n_samples} vector, got shape {assignment.shape}"
        )
    if not np.issubdtype(assignment.dtype, np.integer):
        raise ValueError(f"assignment must be integer-valued, got dtype {assignment.dtype}")
    if assignment.size and (assignment.min() < 0 or assignment.max() >= n_clusters):
        raise ValueError(f"assignment ids must lie in [0, {n_clusters})")
    return assignment


def check_labels(labels, n_samples: int | None = None) -> np.ndarray:
    """Validate a ground-truth or predicted label vector."""
    labels = np.asarray(labels)
    if labels.ndim != 1 or labels.shape[0] < 1:
        raise ValueError(f"labels must be a non-empty 1-D vector, got shape {labels.shape}")
    if not np.issubdtype(labels.dtype, np.integer):
        raise ValueError(f"labels must be integer-valued, got dtype {labels.dtype}")
    if labels.min() < 0:
        raise ValueError("labels must be non-negative class ids")
    if n_samples is not None and labels.shape[0] != n_samples:
        raise ValueError(f"expected {n_samples} labels, got {labels.shape[0]}")
    return labels

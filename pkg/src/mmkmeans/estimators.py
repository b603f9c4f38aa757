"""Scikit-learn style estimator fronts for the two solvers."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .lloyd import assign_step, run_lloyd
from .mm import run_mm
from .model import RunConfig, objective_complete
from .validation import check_mask, check_points


class KMeans(ClusterMixin, BaseEstimator):
    """K-means clustering with random-sample initialization.

    Parameters
    ----------
    n_clusters : int
        Number of clusters to form.
    tol : float
        Stop once the summed squared centroid movement of one iteration
        drops to this value.
    max_iter : int
        Iteration cap.
    random_state : int or None
        Seed for the initialization draw; None draws one from OS entropy.

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
    labels_ : ndarray of shape (n_samples,)
    inertia_ : float
        Within-cluster sum of squares of the final model.
    n_iter_ : int
    converged_ : bool
    trace_ : RunTrace
        Per-iteration centroids, objective and movement.
    """

    def __init__(self, n_clusters=3, tol=1e-6, max_iter=100, random_state=None):
        self.n_clusters = n_clusters
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state

    def _config(self):
        return RunConfig(
            k=self.n_clusters,
            epsilon=self.tol,
            max_iter=self.max_iter,
            seed=self.random_state,
        )

    def fit(self, X, y=None):
        X = check_points(X)
        result = run_lloyd(X, self._config())
        self.cluster_centers_ = result.centroids
        self.labels_ = result.assignment
        self.inertia_ = objective_complete(X, result.assignment, result.centroids)
        self.trace_ = result.trace
        self.n_iter_ = len(result.trace.iterations)
        self.converged_ = result.trace.converged
        self.seed_ = result.seed
        return self

    def predict(self, X):
        """Assign samples to the nearest fitted centroid."""
        return assign_step(check_points(X), self.cluster_centers_)


class MMKMeans(ClusterMixin, BaseEstimator):
    """K-means for incomplete data via per-iteration centroid imputation.

    Accepts either an explicit boolean observation mask (True = observed)
    or, when ``mask`` is omitted, NaN entries in ``X`` marking the
    unobserved slots. Shares the parameters and fitted attributes of
    :class:`KMeans`; instead of ``inertia_`` it exposes
    ``observed_objective_`` (the objective restricted to observed
    coordinates) and ``completed_data_`` (the working matrix with the final
    imputed values).
    """

    def __init__(self, n_clusters=3, tol=1e-6, max_iter=100, random_state=None):
        self.n_clusters = n_clusters
        self.tol = tol
        self.max_iter = max_iter
        self.random_state = random_state

    def _config(self):
        return RunConfig(
            k=self.n_clusters,
            epsilon=self.tol,
            max_iter=self.max_iter,
            seed=self.random_state,
        )

    def fit(self, X, y=None, mask=None):
        X = check_points(X, allow_nan=True)
        if mask is None:
            mask = ~np.isnan(X)
        mask = check_mask(mask, X.shape)
        result = run_mm(X, mask, self._config())
        self.cluster_centers_ = result.centroids
        self.labels_ = result.assignment
        self.observed_objective_ = result.trace.iterations[-1].objective
        self.trace_ = result.trace
        self.n_iter_ = len(result.trace.iterations)
        self.converged_ = result.trace.converged
        self.seed_ = result.seed
        completed = np.where(mask, X, result.centroids[result.assignment])
        self.completed_data_ = completed
        return self

    def fit_predict(self, X, y=None, mask=None):
        return self.fit(X, mask=mask).labels_

    def predict(self, X):
        """Assign complete samples to the nearest fitted centroid."""
        return assign_step(check_points(X), self.cluster_centers_)

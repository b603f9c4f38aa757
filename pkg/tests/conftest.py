import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_instance(seed, max_m=30, max_d=4, max_k=4, missing=0.4):
    """A small random (points, observed, assignment, centroids) tuple."""
    r = np.random.default_rng(seed)
    m = int(r.integers(2, max_m + 1))
    d = int(r.integers(1, max_d + 1))
    k = int(r.integers(1, max_k + 1))
    points = r.normal(scale=r.uniform(0.5, 3.0), size=(m, d))
    observed = r.random((m, d)) > missing
    assignment = r.integers(0, k, size=m)
    centroids = r.normal(size=(k, d))
    return points, observed, assignment, centroids

"""External and internal clustering evaluation scores.

The agreement scores (homogeneity, completeness, V-measure, adjusted Rand
index, adjusted mutual information) are computed from a class-by-cluster
contingency table; the silhouette coefficient is computed from pairwise
Euclidean distances. Entropies are measured in nats.

Every score is invariant to relabeling of the predicted ids. The
implementations guarantee this bit-for-bit by accumulating their term sums
in a canonical (sorted) order, so tests may assert exact equality under
label permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.special import gammaln

from .validation import check_labels, check_points


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts of true classes (rows) against predicted clusters (columns)."""

    counts: np.ndarray

    def __post_init__(self):
        counts = np.asarray(self.counts)
        if counts.ndim != 2 or not np.issubdtype(counts.dtype, np.integer):
            raise ValueError("counts must be a 2-D integer matrix")
        if (counts < 0).any():
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "counts", counts)

    @property
    def row_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def col_totals(self) -> np.ndarray:
        return self.counts.sum(axis=0)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def contingency(truth, pred) -> ContingencyTable:
    """Tally how many samples fall in each (true class, predicted cluster) cell."""
    truth = check_labels(truth)
    pred = check_labels(pred, n_samples=truth.shape[0])
    classes, t_idx = np.unique(truth, return_inverse=True)
    clusters, p_idx = np.unique(pred, return_inverse=True)
    counts = np.zeros((classes.size, clusters.size), dtype=np.int64)
    np.add.at(counts, (t_idx, p_idx), 1)
    return ContingencyTable(counts=counts)


def _sorted_sum(terms: np.ndarray) -> float:
    # canonical accumulation order makes the sum independent of label order
    return float(np.sort(terms, kind="stable").sum())


def _entropy(counts: np.ndarray, total: int) -> float:
    """Entropy in nats of the empirical distribution given by ``counts``."""
    positive = counts[counts > 0].astype(np.float64)
    p = positive / total
    return _sorted_sum(-p * np.log(p))


def _conditional_entropy(counts: np.ndarray, conditioning_totals: np.ndarray, total: int) -> float:
    """H(rows | columns) when ``conditioning_totals`` are the column sums."""
    rows, cols = np.nonzero(counts)
    joint = counts[rows, cols].astype(np.float64)
    given = conditioning_totals[cols].astype(np.float64)
    return _sorted_sum(-(joint / total) * np.log(joint / given))


def homogeneity_completeness_v(table: ContingencyTable) -> tuple[float, float, float]:
    """Entropy-based agreement scores of a clustering against true classes.

    Homogeneity is 1 when every cluster holds a single class, completeness
    is 1 when every class sits in a single cluster, and the V-measure is
    their harmonic mean. Degenerate conventions: a zero-entropy side scores
    1 for its ratio, and the V-measure is 0 when both scores are 0.
    """
    total = table.total
    if total < 1:
        raise ValueError("contingency table is empty")
    h_classes = _entropy(table.row_totals, total)
    h_clusters = _entropy(table.col_totals, total)
    h_classes_given = _conditional_entropy(table.counts, table.col_totals, total)
    h_clusters_given = _conditional_entropy(table.counts.T, table.row_totals, total)
    homogeneity = 1.0 if h_classes == 0.0 else 1.0 - h_classes_given / h_classes
    completeness = 1.0 if h_clusters == 0.0 else 1.0 - h_clusters_given / h_clusters
    if homogeneity + completeness == 0.0:
        v_measure = 0.0
    else:
        v_measure = 2.0 * homogeneity * completeness / (homogeneity + completeness)
    return homogeneity, completeness, v_measure


def adjusted_rand_index(table: ContingencyTable) -> float:
    """Chance-corrected pair-counting agreement between two labelings.

    Exact rational arithmetic keeps the score identical under any relabeling.
    Returns 1.0 when the correction denominator vanishes, which happens only
    when both labelings are the same trivial partition structure.
    """
    total = table.total
    if total < 2:
        raise ValueError("adjusted Rand index needs at least 2 samples")
    cells = table.counts[table.counts > 1]
    index = sum(comb(int(c), 2) for c in cells)
    sum_rows = sum(comb(int(c), 2) for c in table.row_totals)
    sum_cols = sum(comb(int(c), 2) for c in table.col_totals)
    expected = Fraction(sum_rows * sum_cols, comb(total, 2))
    max_index = Fraction(sum_rows + sum_cols, 2)
    if max_index == expected:
        return 1.0
    return float((index - expected) / (max_index - expected))


def mutual_information(table: ContingencyTable) -> float:
    """Mutual information in nats between the two labelings."""
    total = table.total
    if total < 1:
        raise ValueError("contingency table is empty")
    rows, cols = np.nonzero(table.counts)
    joint = table.counts[rows, cols].astype(np.float64)
    outer = table.row_totals[rows].astype(np.float64) * table.col_totals[cols].astype(np.float64)
    return _sorted_sum((joint / total) * np.log(total * joint / outer))


def expected_mutual_information(table: ContingencyTable) -> float:
    """Expected mutual information under random labelings with fixed marginals.

    The expectation runs over all contingency tables with the observed row
    and column sums, each cell following the hypergeometric law.
    """
    total = table.total
    if total < 1:
        raise ValueError("contingency table is empty")
    emi = 0.0
    for a in np.sort(table.row_totals):
        a = int(a)
        for b in np.sort(table.col_totals):
            b = int(b)
            lo = max(1, a + b - total)
            hi = min(a, b)
            if hi < lo:
                continue
            nij = np.arange(lo, hi + 1, dtype=np.float64)
            log_pmf = (
                gammaln(a + 1)
                - gammaln(nij + 1)
                - gammaln(a - nij + 1)
                + gammaln(total - a + 1)
                - gammaln(b - nij + 1)
                - gammaln(total - a - b + nij + 1)
                + gammaln(b + 1)
                + gammaln(total - b + 1)
                - gammaln(total + 1)
            )
            terms = (nij / total) * np.log(total * nij / (a * b)) * np.exp(log_pmf)
            emi += _sorted_sum(terms)
    return emi


def adjusted_mutual_information(table: ContingencyTable) -> float:
    """Mutual information corrected for chance, normalized by the mean entropy.

    Scores 1 for identical partitions and hovers around 0 for independent
    ones. Returns 1.0 when the denominator vanishes (both partitions
    trivial); a constant labeling against a non-trivial one scores exactly 0.
    """
    total = table.total
    if total < 1:
        raise ValueError("contingency table is empty")
    mi = mutual_information(table)
    emi = expected_mutual_information(table)
    mean_entropy = 0.5 * (_entropy(table.row_totals, total) + _entropy(table.col_totals, total))
    denominator = mean_entropy - emi
    if denominator == 0.0:
        return 1.0
    # MI never exceeds the mean entropy; trim the ulp-level float overshoot
    return min(1.0, (mi - emi) / denominator)


def silhouette_samples(points, pred) -> np.ndarray:
    """Per-sample silhouette values.

    For each sample, ``a`` is its mean Euclidean distance to the rest of its
    own cluster and ``b`` the smallest mean distance to any other cluster;
    the sample scores (b - a) / max(a, b). Samples in singleton clusters
    score 0, as do samples where both means vanish.
    """
    points = check_points(points)
    pred = check_labels(pred, n_samples=points.shape[0])
    clusters, idx = np.unique(pred, return_inverse=True)
    if clusters.size < 2:
        raise ValueError("silhouette needs at least 2 distinct predicted clusters")
    m = points.shape[0]
    diff = points[:, None, :] - points[None, :, :]
    distances = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    sizes = np.bincount(idx, minlength=clusters.size)
    cluster_sums = np.zeros((m, clusters.size))
    for c in range(clusters.size):
        cluster_sums[:, c] = distances[:, idx == c].sum(axis=1)

    own_size = sizes[idx]
    scores = np.zeros(m)
    multi = own_size > 1
    a = np.zeros(m)
    a[multi] = cluster_sums[np.arange(m), idx][multi] / (own_size[multi] - 1)
    mean_to = cluster_sums / sizes[None, :]
    mean_to[np.arange(m), idx] = np.inf
    b = mean_to.min(axis=1)
    denom = np.maximum(a, b)
    valid = multi & (denom > 0)
    scores[valid] = (b[valid] - a[valid]) / denom[valid]
    return scores


def silhouette(points, pred) -> float:
    """Mean silhouette coefficient over all samples."""
    return float(silhouette_samples(points, pred).mean())


@dataclass(frozen=True)
class MetricReport:
    """The six evaluation scores plus the fit wall-time for one experiment cell."""

    time_seconds: float
    homogeneity: float
    completeness: float
    v_measure: float
    ari: float
    ami: float
    silhouette: float


def score(points, truth, pred, time_seconds: float = 0.0) -> MetricReport:
    """Evaluate a predicted labeling against the truth on one dataset."""
    table = contingency(truth, pred)
    h, c, v = homogeneity_completeness_v(table)
    return MetricReport(
        time_seconds=float(time_seconds),
        homogeneity=h,
        completeness=c,
        v_measure=v,
        ari=adjusted_rand_index(table),
        ami=adjusted_mutual_information(table),
        silhouette=silhouette(points, pred),
    )

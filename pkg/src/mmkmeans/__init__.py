"""K-means clustering that tolerates element-wise missing data.

The missing-data solver restores a complete working matrix each iteration
by writing the assigned centroid's coordinates into the unobserved slots,
which bounds the observed-coordinate objective from above and drives it
monotonically downhill. The package also ships the synthetic benchmark
generators, the six standard clustering scores, and an experiment CLI.
"""

from .datasets import DatasetSpec, generate, inject_missing
from .estimators import KMeans, MMKMeans
from .lloyd import assign_step, centroid_update_step, init_random_samples, run_lloyd
from .metrics import (
    ContingencyTable,
    MetricReport,
    adjusted_mutual_information,
    adjusted_rand_index,
    contingency,
    homogeneity_completeness_v,
    score,
    silhouette,
    silhouette_samples,
)
from .mm import CompletedDataset, impute_step, init_fully_observed, initial_imputation, run_mm
from .model import (
    Dataset,
    FitResult,
    RunConfig,
    RunTrace,
    majorizer,
    objective_complete,
    objective_observed,
    squared_distance,
)

__version__ = "0.1.0"

__all__ = [
    "CompletedDataset",
    "ContingencyTable",
    "Dataset",
    "DatasetSpec",
    "FitResult",
    "KMeans",
    "MMKMeans",
    "MetricReport",
    "RunConfig",
    "RunTrace",
    "adjusted_mutual_information",
    "adjusted_rand_index",
    "assign_step",
    "centroid_update_step",
    "contingency",
    "generate",
    "homogeneity_completeness_v",
    "impute_step",
    "init_fully_observed",
    "init_random_samples",
    "initial_imputation",
    "inject_missing",
    "majorizer",
    "objective_complete",
    "objective_observed",
    "run_lloyd",
    "run_mm",
    "score",
    "silhouette",
    "silhouette_samples",
    "squared_distance",
]

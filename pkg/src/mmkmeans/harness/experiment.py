"""Experiment protocol: seed streams, restarts, cell execution, scoring.

One experiment cell is (dataset, algorithm, missing fraction, master seed).
The master seed deterministically derives one sub-seed for the missingness
mask and one per solver restart, so cells can run in any order or in
parallel without changing results. A cell fits the solver ``restarts``
times and keeps the run with the lowest final objective.

Scoring assigns the original (complete) points to the fitted centroids and
compares that labeling with the ground truth; the silhouette is computed on
the same geometry. Features are standardized to zero mean and unit variance
before fitting unless a plan or run says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..datasets import FAMILY_CLUSTERS, DatasetSpec, generate, inject_missing
from ..lloyd import assign_step, run_lloyd
from ..metrics import MetricReport, score, silhouette
from ..mm import run_mm
from ..model import Dataset, FitResult, RunConfig
from . import io

ALGORITHMS = ("lloyd", "mm")
DEFAULT_FRACTIONS = (0.0, 0.1, 0.3, 0.5)
DEFAULT_RESTARTS = 10


def standardize(points: np.ndarray) -> np.ndarray:
    """Center each feature and scale it to unit variance (constant features pass through)."""
    mean = points.mean(axis=0)
    std = points.std(axis=0)
    std = np.where(std == 0.0, 1.0, std)
    return (points - mean) / std


def derive_seeds(master_seed: int, restarts: int) -> tuple[int, list[int]]:
    """Split a master seed into the mask seed and one seed per restart.

    The mask seed is the first word of the stream, so it does not depend on
    the restart count and can be re-derived later from the recorded master.
    """
    words = np.random.SeedSequence(int(master_seed)).generate_state(restarts + 1, np.uint64)
    return int(words[0]), [int(w) for w in words[1:]]


def mask_for_run(master_seed: int, fraction: float, shape: tuple[int, int]) -> np.ndarray:
    """Reconstruct the observation mask a run with this master seed used."""
    mask_seed, _ = derive_seeds(master_seed, 0)
    dummy = np.zeros(shape)
    return inject_missing(dummy, fraction, np.random.default_rng(mask_seed))


@dataclass
class CellResult:
    fit: FitResult
    observed: np.ndarray
    fit_seconds: float
    restarts_run: int


def run_cell(
    points: np.ndarray,
    algo: str,
    fraction: float,
    k: int,
    master_seed: int,
    epsilon: float = 1e-6,
    max_iter: int = 100,
    restarts: int = DEFAULT_RESTARTS,
) -> CellResult:
    """Fit one experiment cell on an already-preprocessed sample matrix."""
    if algo not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    if algo == "lloyd" and fraction > 0.0:
        raise ValueError("lloyd requires complete data; use the mm algorithm for fraction > 0")
    if restarts < 1:
        raise ValueError(f"restarts must be >= 1, got {restarts}")
    mask_seed, solver_seeds = derive_seeds(master_seed, restarts)
    if fraction > 0.0:
        observed = inject_missing(points, fraction, np.random.default_rng(mask_seed))
    else:
        observed = np.ones(points.shape, dtype=bool)

    best = None
    fit_seconds = 0.0
    for solver_seed in solver_seeds:
        config = RunConfig(k=k, epsilon=epsilon, max_iter=max_iter, seed=solver_seed)
        if algo == "lloyd":
            fit = run_lloyd(points, config)
        else:
            fit = run_mm(points, observed, config)
        fit_seconds += fit.trace.elapsed
        final_objective = fit.trace.iterations[-1].objective
        if best is None or final_objective < best[0]:
            best = (final_objective, fit)
    return CellResult(fit=best[1], observed=observed, fit_seconds=fit_seconds, restarts_run=restarts)


def predicted_labels(points: np.ndarray, fit: FitResult) -> np.ndarray:
    """Label the original points by their nearest fitted centroid."""
    return assign_step(points, fit.centroids)


def evaluate_cell(
    dataset: Dataset,
    algo: str,
    fraction: float,
    k: int,
    master_seed: int,
    epsilon: float = 1e-6,
    max_iter: int = 100,
    restarts: int = DEFAULT_RESTARTS,
    scale: bool = True,
) -> tuple[MetricReport, CellResult]:
    """Run one cell end to end and score it against the dataset's labels."""
    if dataset.labels is None:
        raise ValueError("evaluate_cell needs a labeled dataset")
    points = standardize(dataset.points) if scale else dataset.points
    cell = run_cell(points, algo, fraction, k, master_seed, epsilon, max_iter, restarts)
    pred = predicted_labels(points, cell.fit)
    report = score(points, dataset.labels, pred, time_seconds=cell.fit_seconds)
    return report, cell


def truth_report(dataset: Dataset, scale: bool = True) -> MetricReport:
    """Score the ground-truth labeling against itself (the baseline table row)."""
    if dataset.labels is None:
        raise ValueError("truth_report needs a labeled dataset")
    points = standardize(dataset.points) if scale else dataset.points
    return score(points, dataset.labels, dataset.labels, time_seconds=0.0)


@dataclass(frozen=True)
class ReportRow:
    """One scored experiment cell, ready for the report table."""

    dataset: str
    algorithm: str
    missing: float
    metrics: MetricReport

    def as_csv_dict(self) -> dict:
        m = self.metrics
        return {
            "dataset": self.dataset,
            "algorithm": self.algorithm,
            "missing": self.missing,
            "time": m.time_seconds,
            "homogeneity": m.homogeneity,
            "completeness": m.completeness,
            "v_measure": m.v_measure,
            "ari": m.ari,
            "ami": m.ami,
            "silhouette": m.silhouette,
        }


@dataclass
class ExperimentPlan:
    """The full benchmark grid: datasets x fractions x algorithms.

    ``lloyd`` only pairs with fraction 0; ``mm`` covers the positive
    fractions (and is required whenever any are present).
    """

    specs: list[DatasetSpec]
    fractions: tuple[float, ...] = DEFAULT_FRACTIONS
    algorithms: tuple[str, ...] = ALGORITHMS
    k_overrides: dict[str, int] = field(default_factory=dict)
    epsilon: float = 1e-6
    max_iter: int = 100
    restarts: int = DEFAULT_RESTARTS
    scale: bool = True
    output_dir: Path | None = None

    def __post_init__(self):
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {algo!r}")
        if any(f > 0 for f in self.fractions) and "mm" not in self.algorithms:
            raise ValueError("positive missing fractions require the mm algorithm")
        if any(not 0 <= f <= 1 for f in self.fractions):
            raise ValueError("missing fractions must lie in [0, 1]")

    def k_for(self, spec: DatasetSpec) -> int:
        return self.k_overrides.get(spec.family, FAMILY_CLUSTERS[spec.family])

    def cells(self):
        """Yield (algo, fraction) pairs in table order."""
        for fraction in self.fractions:
            if fraction == 0.0 and "lloyd" in self.algorithms:
                yield "lloyd", 0.0
            elif fraction > 0.0 and "mm" in self.algorithms:
                yield "mm", fraction


def default_plan(
    output_dir=None,
    seeds=(0,),
    n: int = 500,
    noise: float = 0.05,
) -> ExperimentPlan:
    """The benchmark grid: five families, fractions 0/10/30/50 percent."""
    specs = [
        DatasetSpec(family=family, n=n, noise=noise, seed=seed)
        for family in FAMILY_CLUSTERS
        for seed in seeds
    ]
    return ExperimentPlan(
        specs=specs,
        output_dir=Path(output_dir) if output_dir is not None else None,
    )


def cell_master_seed(spec_seed: int, cell_index: int) -> int:
    """Derive one cell's master seed from the dataset seed and cell position."""
    return int(np.random.SeedSequence([int(spec_seed), int(cell_index)]).generate_state(1, np.uint64)[0])


def execute_plan(plan: ExperimentPlan) -> list[ReportRow]:
    """Run every cell of the plan, optionally writing all artifacts.

    With an output directory set, writes one dataset CSV per spec, one
    result JSON (plus mask CSV for masked cells) per cell, and report.csv.
    """
    out = plan.output_dir
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    rows = []
    for spec in plan.specs:
        dataset = generate(spec)
        name = f"{spec.family}_s{spec.seed}"
        if out is not None:
            io.write_dataset_csv(out / f"{name}.csv", dataset)
        points = standardize(dataset.points) if plan.scale else dataset.points
        for cell_index, (algo, fraction) in enumerate(plan.cells()):
            master = cell_master_seed(spec.seed, cell_index)
            cell = run_cell(
                points, algo, fraction, plan.k_for(spec), master,
                plan.epsilon, plan.max_iter, plan.restarts,
            )
            pred = predicted_labels(points, cell.fit)
            report = score(points, dataset.labels, pred, time_seconds=cell.fit_seconds)
            rows.append(ReportRow(dataset=name, algorithm=algo, missing=fraction, metrics=report))
            if out is not None:
                stem = f"{name}_{algo}_m{int(round(fraction * 100))}"
                config = {
                    "algo": algo,
                    "k": plan.k_for(spec),
                    "epsilon": plan.epsilon,
                    "max_iter": plan.max_iter,
                    "missing_fraction": fraction,
                    "restarts": plan.restarts,
                    "standardize": plan.scale,
                    "dataset": f"{name}.csv",
                    "n_samples": dataset.n_samples,
                    "n_features": dataset.n_features,
                }
                payload = io.result_payload(cell.fit, cell.fit_seconds, master, config)
                io.write_result_json(out / f"{stem}.json", payload)
                if fraction > 0.0:
                    io.write_mask_csv(out / f"{stem}.mask.csv", cell.observed)
    if out is not None:
        io.write_report_csv(out / "report.csv", [row.as_csv_dict() for row in rows])
    return rows


def median_metric(rows, dataset_prefix: str, algo: str, fraction: float, attr: str) -> float:
    """Median of one metric over all rows of a (family, algo, fraction) cell."""
    values = [
        getattr(row.metrics, attr)
        for row in rows
        if row.dataset.startswith(dataset_prefix) and row.algorithm == algo
        and math.isclose(row.missing, fraction)
    ]
    if not values:
        raise ValueError(f"no rows match ({dataset_prefix}, {algo}, {fraction})")
    return float(np.median(values))

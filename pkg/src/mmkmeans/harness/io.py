"""On-disk formats: dataset/mask CSVs, result JSON, report CSV.

Dataset CSV: header ``x0,...,x{d-1},label``, one row per sample, floats
written with full round-trip precision. Mask CSV: header ``m0,...,m{d-1}``
with 1 marking an observed element. Result JSON: centroids, assignment,
per-iteration trace, elapsed fit seconds, master seed and the run config.
All writers produce identical bytes for identical inputs.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from ..model import Dataset, FitResult

REPORT_COLUMNS = [
    "Dataset",
    "Algorithm",
    "Missing",
    "Time",
    "Homogeneity",
    "Completeness",
    "V-measure",
    "ARI",
    "AMI",
    "Silhouette",
]


def write_dataset_csv(path, dataset: Dataset) -> None:
    path = Path(path)
    d = dataset.n_features
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"x{j}" for j in range(d)] + ["label"])
        labels = dataset.labels
        for i in range(dataset.n_samples):
            row = [repr(float(v)) for v in dataset.points[i]]
            row.append(str(int(labels[i])) if labels is not None else "")
            writer.writerow(row)


def read_dataset_csv(path) -> Dataset:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or not header[0].startswith("x"):
            raise ValueError(f"{path}: not a dataset CSV (missing x0.. header)")
        has_label = header[-1] == "label"
        d = len(header) - (1 if has_label else 0)
        points, labels = [], []
        for row in reader:
            if not row:
                continue
            points.append([float(v) for v in row[:d]])
            if has_label:
                labels.append(int(row[d]) if row[d] != "" else -1)
    if not points:
        raise ValueError(f"{path}: dataset CSV holds no samples")
    label_arr = None
    if has_label and all(v >= 0 for v in labels):
        label_arr = np.asarray(labels, dtype=np.int64)
    return Dataset(points=np.asarray(points, dtype=np.float64), labels=label_arr)


def write_mask_csv(path, observed: np.ndarray) -> None:
    observed = np.asarray(observed, dtype=bool)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"m{j}" for j in range(observed.shape[1])])
        for row in observed.astype(int):
            writer.writerow(list(row))


def read_mask_csv(path) -> np.ndarray:
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if not header or not header[0].startswith("m"):
            raise ValueError(f"{path}: not a mask CSV (missing m0.. header)")
        rows = [[bool(int(v)) for v in row] for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: mask CSV holds no rows")
    return np.asarray(rows, dtype=bool)


def result_payload(fit: FitResult, elapsed_seconds: float, seed: int, config: dict) -> dict:
    """Assemble the JSON document for one finished run.

    ``seed`` is the master seed of the cell; the per-restart solver seeds
    derive from it and are not stored.
    """
    return {
        "centroids": [[float(v) for v in row] for row in fit.centroids],
        "assignment": [int(a) for a in fit.assignment],
        "trace": [
            {"n": rec.n, "movement": rec.movement, "objective": rec.objective}
            for rec in fit.trace.iterations
        ],
        "elapsed_seconds": float(elapsed_seconds),
        "seed": int(seed),
        "config": config,
    }


def write_result_json(path, payload: dict) -> None:
    with Path(path).open("w") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def read_result_json(path) -> dict:
    with Path(path).open() as fh:
        payload = json.load(fh)
    for key in ("centroids", "assignment", "trace", "seed", "config"):
        if key not in payload:
            raise ValueError(f"{path}: result JSON is missing the {key!r} field")
    return payload


def format_fraction(fraction: float) -> str:
    return f"{float(fraction):g}"


def write_report_csv(path, rows) -> None:
    """Write report rows (dicts keyed by REPORT_COLUMNS' metric fields)."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row["dataset"],
                    row["algorithm"],
                    format_fraction(row["missing"]),
                    f"{row['time']:.3f}",
                    f"{row['homogeneity']:.3f}",
                    f"{row['completeness']:.3f}",
                    f"{row['v_measure']:.3f}",
                    f"{row['ari']:.3f}",
                    f"{row['ami']:.3f}",
                    f"{row['silhouette']:.3f}",
                ]
            )

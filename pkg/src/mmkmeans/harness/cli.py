"""Command line interface: gen, run, report, plot.

Exit codes: 0 success, 1 runtime failure (I/O, integrity), 2 usage error.
"""

from __future__ import annotations

import argparse
import secrets
import sys
from pathlib import Path

import numpy as np

from ..datasets import FAMILY_CLUSTERS, DatasetSpec, generate
from ..lloyd import assign_step
from ..metrics import score
from ..model import Dataset
from . import io
from .experiment import mask_for_run, run_cell, standardize, truth_report
from .svg import render_scatter


def cmd_gen(args, parser):
    try:
        spec = DatasetSpec(family=args.family, n=args.n, noise=args.noise, seed=args.seed)
    except ValueError as exc:
        parser.error(str(exc))
    dataset = generate(spec)
    io.write_dataset_csv(args.out, dataset)
    print(f"wrote {dataset.n_samples} samples to {args.out}")
    return 0


def cmd_run(args, parser):
    if not 0.0 <= args.missing <= 1.0:
        parser.error(f"--missing must lie in [0, 1], got {args.missing}")
    if args.algo == "lloyd" and args.missing > 0.0:
        parser.error("--algo lloyd requires complete data; use --algo mm with --missing > 0")
    if args.k < 1:
        parser.error(f"--k must be >= 1, got {args.k}")
    if args.iters < 1:
        parser.error(f"--iters must be >= 1, got {args.iters}")
    if args.eps < 0:
        parser.error(f"--eps must be >= 0, got {args.eps}")
    if args.restarts < 1:
        parser.error(f"--restarts must be >= 1, got {args.restarts}")

    dataset = io.read_dataset_csv(args.data)
    seed = args.seed if args.seed is not None else secrets.randbits(64)
    points = standardize(dataset.points) if args.standardize else dataset.points
    cell = run_cell(
        points, args.algo, args.missing, args.k, seed,
        epsilon=args.eps, max_iter=args.iters, restarts=args.restarts,
    )
    config = {
        "algo": args.algo,
        "k": args.k,
        "epsilon": args.eps,
        "max_iter": args.iters,
        "missing_fraction": args.missing,
        "restarts": args.restarts,
        "standardize": bool(args.standardize),
        "dataset": str(args.data),
        "n_samples": dataset.n_samples,
        "n_features": dataset.n_features,
    }
    io.write_result_json(args.out, io.result_payload(cell.fit, cell.fit_seconds, seed, config))
    if args.missing > 0.0:
        mask_path = args.mask_out or str(Path(args.out).with_suffix("")) + ".mask.csv"
        io.write_mask_csv(mask_path, cell.observed)
    converged = "converged" if cell.fit.trace.converged else "hit the iteration cap"
    print(
        f"{args.algo} on {args.data}: {len(cell.fit.trace.iterations)} iterations "
        f"({converged}), fit time {cell.fit_seconds:.3f}s, wrote {args.out}"
    )
    return 0


def _load_result_with_dataset(result_path, dataset_path=None):
    payload = io.read_result_json(result_path)
    config = payload["config"]
    recorded = config.get("dataset")
    if not recorded:
        raise ValueError(f"{result_path}: result does not reference a dataset file")
    if dataset_path is None:
        candidates = [Path(recorded), Path(result_path).parent / Path(recorded).name]
        dataset_path = next((p for p in candidates if p.exists()), None)
        if dataset_path is None:
            raise ValueError(f"{result_path}: referenced dataset {recorded!r} not found")
    dataset = io.read_dataset_csv(dataset_path)
    m = len(payload["assignment"])
    if dataset.n_samples != m or dataset.n_samples != config.get("n_samples", m):
        raise ValueError(
            f"{result_path}: dataset {dataset_path} has {dataset.n_samples} samples, "
            f"result was fit on {m}"
        )
    centroids = np.asarray(payload["centroids"], dtype=np.float64)
    if centroids.shape[1] != dataset.n_features:
        raise ValueError(
            f"{result_path}: centroid dimension {centroids.shape[1]} does not match "
            f"dataset dimension {dataset.n_features}"
        )
    return payload, dataset, Path(recorded)


def cmd_report(args, parser):
    rows = []
    seen_truth = set()
    for result_path in args.results:
        payload, dataset, recorded = _load_result_with_dataset(result_path)
        if dataset.labels is None:
            raise ValueError(f"{result_path}: dataset {recorded} has no labels to score against")
        config = payload["config"]
        name = recorded.stem
        points = standardize(dataset.points) if config.get("standardize", True) else dataset.points
        if args.include_truth and name not in seen_truth:
            seen_truth.add(name)
            truth = truth_report(dataset, scale=config.get("standardize", True))
            rows.append(
                {
                    "dataset": name, "algorithm": "truth", "missing": 0.0,
                    "time": truth.time_seconds, "homogeneity": truth.homogeneity,
                    "completeness": truth.completeness, "v_measure": truth.v_measure,
                    "ari": truth.ari, "ami": truth.ami, "silhouette": truth.silhouette,
                }
            )
        centroids = np.asarray(payload["centroids"], dtype=np.float64)
        pred = assign_step(points, centroids)
        report = score(points, dataset.labels, pred, time_seconds=payload["elapsed_seconds"])
        rows.append(
            {
                "dataset": name, "algorithm": config["algo"],
                "missing": config.get("missing_fraction", 0.0),
                "time": report.time_seconds, "homogeneity": report.homogeneity,
                "completeness": report.completeness, "v_measure": report.v_measure,
                "ari": report.ari, "ami": report.ami, "silhouette": report.silhouette,
            }
        )
    io.write_report_csv(args.out, rows)
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def cmd_plot(args, parser):
    payload, dataset, _ = _load_result_with_dataset(args.result, dataset_path=args.data)
    if dataset.n_features != 2:
        raise ValueError(f"can only plot 2-D datasets, got d={dataset.n_features}")
    config = payload["config"]
    points = standardize(dataset.points) if config.get("standardize", True) else dataset.points
    assignment = np.asarray(payload["assignment"], dtype=np.int64)
    centroids = np.asarray(payload["centroids"], dtype=np.float64)
    fraction = config.get("missing_fraction", 0.0)
    if fraction > 0.0:
        observed = mask_for_run(payload["seed"], fraction, points.shape)
        flags = ~observed.all(axis=1)
    else:
        flags = np.zeros(points.shape[0], dtype=bool)

    with Path(args.out_csv).open("w", newline="") as fh:
        fh.write("x,y,assigned_cluster,any_missing_flag\n")
        for i in range(points.shape[0]):
            fh.write(
                f"{float(points[i, 0])!r},{float(points[i, 1])!r},"
                f"{int(assignment[i])},{int(flags[i])}\n"
            )
    Path(args.out_svg).write_text(render_scatter(points, assignment, centroids, flags))
    print(f"wrote {args.out_csv} and {args.out_svg} ({int(flags.sum())} samples flagged incomplete)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmkmeans",
        description="K-means clustering benchmarks with element-wise missing data",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a labeled synthetic dataset CSV")
    gen.add_argument("--family", required=True, choices=sorted(FAMILY_CLUSTERS))
    gen.add_argument("--n", type=int, default=500, help="sample count (default 500)")
    gen.add_argument("--noise", type=float, default=0.05, help="jitter std-dev for circles/moons")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output dataset CSV path")
    gen.set_defaults(func=cmd_gen)

    run = sub.add_parser("run", help="fit one solver on a dataset and write a result JSON")
    run.add_argument("--data", required=True, help="dataset CSV from gen")
    run.add_argument("--algo", required=True, choices=["lloyd", "mm"])
    run.add_argument("--k", type=int, required=True, help="cluster count")
    run.add_argument("--missing", type=float, default=0.0,
                     help="fraction of elements to hide (mm only)")
    run.add_argument("--iters", type=int, default=100, help="iteration cap (default 100)")
    run.add_argument("--eps", type=float, default=1e-6, help="movement stopping threshold")
    run.add_argument("--seed", type=int, default=None,
                     help="master seed (default: drawn from OS entropy)")
    run.add_argument("--restarts", type=int, default=10,
                     help="independent inits per run, best objective kept (default 10)")
    run.add_argument("--standardize", action=argparse.BooleanOptionalAction, default=True,
                     help="z-score features before fitting (default on)")
    run.add_argument("--out", required=True, help="output result JSON path")
    run.add_argument("--mask-out", default=None,
                     help="mask CSV path for masked runs (default <out>.mask.csv)")
    run.set_defaults(func=cmd_run)

    report = sub.add_parser("report", help="score result files into one report CSV")
    report.add_argument("results", nargs="+", help="result JSON files from run")
    report.add_argument("--out", required=True, help="output report CSV path")
    report.add_argument("--include-truth", action="store_true",
                        help="prepend one ground-truth-as-prediction row per dataset")
    report.set_defaults(func=cmd_report)

    plot = sub.add_parser("plot", help="emit a points CSV and scatter SVG for one result")
    plot.add_argument("--result", required=True, help="result JSON from run")
    plot.add_argument("--data", required=True, help="dataset CSV the run used")
    plot.add_argument("--out-csv", required=True, help="output points CSV path")
    plot.add_argument("--out-svg", required=True, help="output SVG path")
    plot.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

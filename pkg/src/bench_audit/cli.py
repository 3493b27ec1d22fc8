"""Command-line interface: validate | forecast | score | audit.

The pipeline is file-mediated: datasets and forecasts travel as CSV, score
matrices as JSON, so externally produced forecasts (deep learning models run
elsewhere) slot in between any two stages.

Exit codes: 0 success, 1 domain/validation failure, 2 usage/parse failure.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys

from . import report as report_mod
from .audit import AuditConfig, run_audit
from .errors import (
    BenchAuditError,
    ForecastGaps,
    InvalidSize,
    MissingCoverage,
    ParseError,
    UnknownModel,
    ZeroScale,
)
from .forecasters import REGISTRY, ForecastSet, forecast_all
from .ingest import (
    load_dataset_csv,
    load_forecasts_csv,
    load_score_matrix_json,
    save_score_matrix_json,
)
from .metrics import METRICS, build_score_matrix
from .series import DatasetCollection, validate_collection

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _parse_dataset_spec(spec: str):
    """Parse NAME=PATH:HORIZON:PERIOD."""
    try:
        name, rest = spec.split("=", 1)
        path, horizon, period = rest.rsplit(":", 2)
        return name, path, int(horizon), int(period)
    except ValueError:
        raise ParseError(
            f"bad dataset spec {spec!r}; expected NAME=PATH:HORIZON:PERIOD"
        ) from None


def _load_collection(specs):
    datasets = []
    for spec in specs:
        name, path, horizon, period = _parse_dataset_spec(spec)
        datasets.append(load_dataset_csv(path, name, horizon, period))
    return DatasetCollection(tuple(datasets))


def _write_forecast_csv(forecasts: ForecastSet, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "dataset", "series_id", "step", "value"])
        for f in forecasts.forecasts:
            for step, value in enumerate(f.values, start=1):
                writer.writerow(
                    [f.model_id, f.dataset_name, f.series_id, step, repr(value)]
                )


def cmd_validate(args) -> int:
    try:
        collection = _load_collection(args.datasets)
    except (BenchAuditError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = validate_collection(collection)
    for violation in report.violations:
        print(f"violation: {violation}")
    print(f"{len(report.violations)} violations")
    return EXIT_OK if report.ok else EXIT_DOMAIN


def cmd_forecast(args) -> int:
    model_ids = [m.strip() for m in args.models.split(",") if m.strip()]
    try:
        collection = _load_collection(args.datasets)
    except (BenchAuditError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        forecasts = forecast_all(collection, model_ids)
    except UnknownModel as exc:
        print(
            f"error: {exc}\nhint: supply externally produced forecasts via "
            f"`score --forecasts`",
            file=sys.stderr,
        )
        return EXIT_USAGE
    except ForecastGaps as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    _write_forecast_csv(forecasts, args.out)
    print(f"wrote {len(forecasts.forecasts)} forecasts to {args.out}")
    return EXIT_OK


def cmd_score(args) -> int:
    try:
        collection = _load_collection(args.datasets)
        parts = [load_forecasts_csv(path) for path in args.forecasts]
    except (BenchAuditError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    all_forecasts = []
    models = []
    for part in parts:
        all_forecasts.extend(part.forecasts)
        for model in part.models:
            if model not in models:
                models.append(model)
    try:
        merged = ForecastSet(tuple(all_forecasts), tuple(models))
        matrix = build_score_matrix(merged, collection, args.metric)
    except (MissingCoverage, ZeroScale, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    save_score_matrix_json(matrix, args.out)
    print(
        f"wrote {matrix.n_models}x{matrix.n_datasets} {args.metric} "
        f"score matrix to {args.out}"
    )
    return EXIT_OK


def cmd_audit(args) -> int:
    try:
        matrix = load_score_matrix_json(args.scores)
    except (BenchAuditError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    k_values = tuple(int(k) for k in args.k.split(","))
    config = AuditConfig(
        n_max=args.nmax,
        k_values=k_values,
        aggregation=args.aggregation,
        search_tie_policy=args.ties,
        budget=args.budget,
        seed=args.seed,
    )
    try:
        audit = run_audit(matrix, config)
    except (InvalidSize, BenchAuditError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    os.makedirs(args.out_dir, exist_ok=True)
    report_mod.emit_json(audit, os.path.join(args.out_dir, "report.json"))
    report_mod.emit_rank_boxplot_svg(
        matrix, os.path.join(args.out_dir, "rank_boxplot.svg")
    )
    report_mod.emit_cherrypick_panels_svg(
        audit.curves, os.path.join(args.out_dir, "cherrypick_panels.svg")
    )
    report_mod.emit_topk_bars_svg(
        audit.top_k_table, os.path.join(args.out_dir, "topk_bars.svg")
    )

    print(f"baseline winner: {audit.baseline.winner}")
    print("top-k reportable fractions:")
    for n in sorted(audit.top_k_table):
        row = " ".join(
            f"k={k}: {frac:.3f}"
            for k, frac in sorted(audit.top_k_table[n].items())
        )
        print(f"  n={n}: {row} [{audit.modes[n]['mode']}]")
    print("misidentification risk:")
    for n in sorted(audit.risk_curve):
        print(f"  n={n}: {audit.risk_curve[n]:.3f}")
    print(f"outputs in {args.out_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bench-audit",
        description="Audit forecasting benchmarks for dataset cherry-picking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check dataset files for violations")
    p.add_argument("datasets", nargs="+", metavar="NAME=PATH:HORIZON:PERIOD")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("forecast", help="run the built-in classical models")
    p.add_argument("datasets", nargs="+", metavar="NAME=PATH:HORIZON:PERIOD")
    p.add_argument("--models", default=",".join(sorted(REGISTRY)),
                   help="comma-separated model ids")
    p.add_argument("--out", required=True, help="forecast CSV to write")
    p.set_defaults(func=cmd_forecast)

    p = sub.add_parser("score", help="score forecasts into a matrix")
    p.add_argument("datasets", nargs="+", metavar="NAME=PATH:HORIZON:PERIOD")
    p.add_argument("--forecasts", action="append", required=True,
                   help="forecast CSV (repeatable; built-in or external)")
    p.add_argument("--metric", choices=METRICS, default="smape")
    p.add_argument("--out", required=True, help="score matrix JSON to write")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("audit", help="run the cherry-picking audit")
    p.add_argument("scores", help="score matrix JSON")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--k", default="1,2,3", help="comma-separated k values")
    p.add_argument("--aggregation", choices=("mean_rank", "mean_score"),
                   default="mean_rank")
    p.add_argument("--ties", choices=("average", "competition", "deterministic"),
                   default="competition", help="tie policy for the search")
    p.add_argument("--budget", type=int, default=100_000,
                   help="max subsets per size before sampling kicks in")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_audit)

    return parser


def main(argv=None) -> int:
    # informational cap only; results must not depend on it
    threads = os.environ.get("BENCH_AUDIT_THREADS")
    if threads is not None and not threads.isdigit():
        print("error: BENCH_AUDIT_THREADS must be an integer", file=sys.stderr)
        return EXIT_USAGE
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

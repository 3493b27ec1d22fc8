"""Report emitters: versioned JSON and dependency-free static SVG figures."""

from __future__ import annotations

import json

import numpy as np

from .audit import AuditConfig, AuditReport, CherryPickCurve, CurveEntry
from .errors import MismatchedCurveLengths
from .metrics import ScoreMatrix
from .ranking import RankingOutcome, rank_distribution

SCHEMA_VERSION = "bench_audit_report_v1"


# -- JSON ---------------------------------------------------------------------

def report_to_dict(report: AuditReport) -> dict:
    cfg = report.config
    return {
        "schema": SCHEMA_VERSION,
        "config": {
            "n_max": cfg.n_max,
            "k_values": list(cfg.k_values),
            "aggregation": cfg.aggregation,
            "search_tie_policy": cfg.search_tie_policy,
            "distribution_tie_policy": cfg.distribution_tie_policy,
            "budget": cfg.budget,
            "seed": cfg.seed,
        },
        "models": list(report.model_ids),
        "datasets": list(report.dataset_names),
        "baseline": {
            "subset": report.baseline.subset,
            "aggregation": report.baseline.aggregation,
            "tie_policy": report.baseline.tie_policy,
            "ranks": list(report.baseline.ranks),
            "winner": report.baseline.winner,
        },
        "curves": [
            {
                "model": curve.model_id,
                "entries": [
                    {
                        "n": e.n,
                        "best_rank": e.best_rank,
                        "witness": e.witness,
                        "witness_ranks": list(e.witness_ranks),
                    }
                    for e in curve.entries
                ],
            }
            for curve in report.curves
        ],
        "top_k_table": {
            str(n): {str(k): f for k, f in sorted(row.items())}
            for n, row in sorted(report.top_k_table.items())
        },
        "risk_curve": {str(n): f for n, f in sorted(report.risk_curve.items())},
        "modes": {
            str(n): dict(sorted(info.items()))
            for n, info in sorted(report.modes.items())
        },
    }


def report_from_dict(doc: dict) -> AuditReport:
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    cfg = doc["config"]
    config = AuditConfig(
        n_max=cfg["n_max"],
        k_values=tuple(cfg["k_values"]),
        aggregation=cfg["aggregation"],
        search_tie_policy=cfg["search_tie_policy"],
        distribution_tie_policy=cfg["distribution_tie_policy"],
        budget=cfg["budget"],
        seed=cfg["seed"],
    )
    models = tuple(doc["models"])
    baseline = RankingOutcome(
        subset=doc["baseline"]["subset"],
        aggregation=doc["baseline"]["aggregation"],
        tie_policy=doc["baseline"]["tie_policy"],
        model_ids=models,
        ranks=tuple(doc["baseline"]["ranks"]),
        winner=doc["baseline"]["winner"],
    )
    curves = tuple(
        CherryPickCurve(
            c["model"],
            models,
            tuple(
                CurveEntry(
                    e["n"], e["best_rank"], e["witness"],
                    tuple(e["witness_ranks"]),
                )
                for e in c["entries"]
            ),
        )
        for c in doc["curves"]
    )
    return AuditReport(
        config=config,
        model_ids=models,
        dataset_names=tuple(doc["datasets"]),
        baseline=baseline,
        curves=curves,
        top_k_table={
            int(n): {int(k): f for k, f in row.items()}
            for n, row in doc["top_k_table"].items()
        },
        risk_curve={int(n): f for n, f in doc["risk_curve"].items()},
        modes={int(n): info for n, info in doc["modes"].items()},
    )


def emit_json(report: AuditReport, path):
    """Write the report as deterministic (sorted-key) JSON."""
    payload = json.dumps(report_to_dict(report), indent=2, sort_keys=True)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)
        fh.write("\n")


def load_json(path) -> AuditReport:
    with open(path, encoding="utf-8") as fh:
        return report_from_dict(json.load(fh))


# -- SVG helpers --------------------------------------------------------------

def _esc(text: str) -> str:
    return (
        str(text)
        .replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


class _Svg:
    """Minimal deterministic SVG string builder."""

    def __init__(self, width, height):
        self.width = width
        self.height = height
        self.parts = [
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">\n'
        ]

    def rect(self, x, y, w, h, fill, cls=""):
        cls_attr = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<rect{cls_attr} x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" '
            f'height="{h:.2f}" fill="{fill}"/>\n'
        )

    def line(self, x1, y1, x2, y2, stroke="#333", cls=""):
        cls_attr = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<line{cls_attr} x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
            f'y2="{y2:.2f}" stroke="{stroke}" stroke-width="1"/>\n'
        )

    def circle(self, cx, cy, r, fill, cls=""):
        cls_attr = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<circle{cls_attr} cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.2f}" '
            f'fill="{fill}"/>\n'
        )

    def text(self, x, y, s, size=11, anchor="middle", cls=""):
        cls_attr = f' class="{cls}"' if cls else ""
        self.parts.append(
            f'<text{cls_attr} x="{x:.2f}" y="{y:.2f}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}">{_esc(s)}</text>\n'
        )

    def open_group(self, cls):
        self.parts.append(f'<g class="{cls}">\n')

    def close_group(self):
        self.parts.append("</g>\n")

    def write(self, path):
        self.parts.append("</svg>\n")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("".join(self.parts))


def _box_stats(ranks):
    """Median/quartiles by linear interpolation, Tukey whiskers, outliers."""
    data = np.sort(np.asarray(ranks, dtype=float))
    q1, med, q3 = (float(np.quantile(data, q)) for q in (0.25, 0.5, 0.75))
    iqr = q3 - q1
    lo_fence, hi_fence = q1 - 1.5 * iqr, q3 + 1.5 * iqr
    inliers = data[(data >= lo_fence) & (data <= hi_fence)]
    outliers = data[(data < lo_fence) | (data > hi_fence)]
    return {
        "q1": q1,
        "median": med,
        "q3": q3,
        "whisker_lo": float(inliers.min()),
        "whisker_hi": float(inliers.max()),
        "outliers": [float(v) for v in outliers],
    }


# -- figures ------------------------------------------------------------------

def emit_rank_boxplot_svg(matrix: ScoreMatrix, path):
    """Per-model box plots of within-dataset ranks, sorted by median rank."""
    stats = [
        (model, _box_stats(rank_distribution(matrix, model)))
        for model in matrix.model_ids
    ]
    stats.sort(key=lambda item: (item[1]["median"], item[0]))

    m = matrix.n_models
    margin_l, margin_t, margin_b = 60, 20, 50
    slot, box_w = 60, 28
    plot_h = 260
    width = margin_l + slot * m + 20
    height = margin_t + plot_h + margin_b
    max_rank = float(m)

    def y_of(rank):
        # rank 1 at the top
        return margin_t + (rank - 0.5) / max_rank * plot_h

    svg = _Svg(width, height)
    svg.line(margin_l - 10, margin_t, margin_l - 10, margin_t + plot_h)
    for r in range(1, m + 1):
        svg.text(margin_l - 16, y_of(r) + 4, str(r), size=9, anchor="end")
    for i, (model, st) in enumerate(stats):
        cx = margin_l + slot * i + slot / 2
        svg.open_group("box")
        svg.line(cx, y_of(st["whisker_lo"]), cx, y_of(st["q1"]))
        svg.line(cx, y_of(st["q3"]), cx, y_of(st["whisker_hi"]))
        svg.rect(
            cx - box_w / 2, y_of(st["q1"]),
            box_w, max(y_of(st["q3"]) - y_of(st["q1"]), 0.5),
            fill="#7fbf7f",
        )
        svg.line(cx - box_w / 2, y_of(st["median"]), cx + box_w / 2,
                 y_of(st["median"]), stroke="#000")
        for v in st["outliers"]:
            svg.circle(cx, y_of(v), 2.5, fill="#333", cls="outlier")
        svg.text(cx, margin_t + plot_h + 16, model, size=9)
        svg.close_group()
    svg.write(path)


def emit_cherrypick_panels_svg(curves, path):
    """One row per highlighted model; one panel per subset size n.

    Within a panel, bars are each model's rank on the highlighted model's
    witness subset; the highlighted model's bar is drawn in red.
    """
    curves = list(curves)
    if not curves:
        raise MismatchedCurveLengths("no curves to render")
    n_max = curves[0].n_max
    if any(c.n_max != n_max for c in curves):
        raise MismatchedCurveLengths("curves disagree on n_max")

    panel_w, panel_h = 180, 140
    margin, gap = 40, 14
    width = margin * 2 + n_max * (panel_w + gap)
    height = margin * 2 + len(curves) * (panel_h + gap) + 20

    svg = _Svg(width, height)
    for row, curve in enumerate(curves):
        m = len(curve.model_ids)
        top = margin + row * (panel_h + gap)
        svg.text(margin - 30, top + panel_h / 2, curve.model_id, size=10,
                 anchor="start")
        for entry in curve.entries:
            left = margin + (entry.n - 1) * (panel_w + gap)
            svg.open_group("panel")
            svg.text(left + panel_w / 2, top + 12, f"n={entry.n}", size=10)
            bar_w = panel_w / max(m, 1) * 0.8
            max_rank = float(m)
            for i, rank in enumerate(entry.witness_ranks):
                bx = left + panel_w / m * i + panel_w / m * 0.1
                bh = rank / max_rank * (panel_h - 30)
                is_hl = curve.model_ids[i] == curve.model_id
                svg.rect(
                    bx, top + panel_h - 10 - bh, bar_w, bh,
                    fill="#d62728" if is_hl else "#8ea6c8",
                    cls="bar highlight" if is_hl else "bar",
                )
            svg.close_group()
    svg.write(path)


def emit_topk_bars_svg(table, path):
    """Grouped bars: for each subset size n, one bar per k, y axis 0-100%."""
    ns = sorted(table)
    ks = sorted({k for row in table.values() for k in row})
    margin_l, margin_t, margin_b = 50, 20, 40
    group_w = 34 * len(ks) + 24
    plot_h = 220
    width = margin_l + group_w * len(ns) + 20
    height = margin_t + plot_h + margin_b
    palette = ["#4c78a8", "#f58518", "#54a24b", "#b279a2", "#e45756"]

    svg = _Svg(width, height)
    for pct in (0, 25, 50, 75, 100):
        y = margin_t + plot_h * (1 - pct / 100)
        svg.line(margin_l - 6, y, margin_l, y)
        svg.text(margin_l - 10, y + 4, f"{pct}%", size=9, anchor="end")
    for gi, n in enumerate(ns):
        gx = margin_l + group_w * gi
        for ki, k in enumerate(ks):
            frac = table[n].get(k)
            if frac is None:
                continue
            bh = frac * plot_h
            bx = gx + 12 + 34 * ki
            svg.rect(
                bx, margin_t + plot_h - bh, 26, bh,
                fill=palette[ki % len(palette)], cls="bar",
            )
            svg.text(bx + 13, margin_t + plot_h - bh - 4,
                     f"{round(frac * 100)}%", size=9, cls="value")
        svg.text(gx + group_w / 2, margin_t + plot_h + 16, f"n={n}", size=10)
    legend_x = margin_l
    for ki, k in enumerate(ks):
        svg.rect(legend_x + 80 * ki, height - 18, 10, 10,
                 fill=palette[ki % len(palette)])
        svg.text(legend_x + 80 * ki + 14, height - 9, f"top {k}", size=9,
                 anchor="start")
    svg.write(path)

import xml.etree.ElementTree as ET

import numpy as np
import pytest

from bench_audit.audit import AuditConfig, run_audit
from bench_audit.errors import MismatchedCurveLengths
from bench_audit.metrics import ScoreMatrix
from bench_audit.report import (
    emit_cherrypick_panels_svg,
    emit_json,
    emit_rank_boxplot_svg,
    emit_topk_bars_svg,
    load_json,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def parse_svg(path):
    return ET.parse(path).getroot()


def glyphs(root, tag, cls):
    return [
        el for el in root.iter(f"{SVG_NS}{tag}")
        if cls in el.get("class", "").split()
    ]


class TestJsonRoundTrip:
    def test_round_trip_identity(self, tiny_matrix, tmp_path):
        report = run_audit(tiny_matrix, AuditConfig(n_max=3))
        path = tmp_path / "report.json"
        emit_json(report, path)
        assert load_json(path) == report

    def test_byte_deterministic(self, tiny_matrix, tmp_path):
        report = run_audit(tiny_matrix, AuditConfig(n_max=2))
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        emit_json(report, p1)
        emit_json(report, p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_sampled_mode_recorded(self, tmp_path):
        rng = np.random.default_rng(2)
        m = ScoreMatrix(
            ("a", "b", "c"), tuple(f"d{i}" for i in range(11)),
            rng.uniform(1, 9, (3, 11)), "generic",
        )
        report = run_audit(m, AuditConfig(n_max=5, budget=50, seed=9))
        path = tmp_path / "r.json"
        emit_json(report, path)
        loaded = load_json(path)
        assert loaded.modes[5]["mode"] == "sampled"
        assert loaded.modes[5]["seed"] == 9
        assert loaded.modes[5]["sample_count"] == 50


class TestBoxplot:
    def test_glyph_count(self, tmp_path):
        rng = np.random.default_rng(4)
        m = ScoreMatrix(
            tuple(f"m{i}" for i in range(13)),
            tuple(f"d{j}" for j in range(13)),
            rng.uniform(1, 100, (13, 13)), "generic",
        )
        path = tmp_path / "box.svg"
        emit_rank_boxplot_svg(m, path)
        root = parse_svg(path)
        assert len(glyphs(root, "g", "box")) == 13

    def test_quantiles_by_linear_interpolation(self):
        from bench_audit.report import _box_stats

        st = _box_stats([1.0, 3.0, 3.0])
        # positions q*(n-1): q1 at 0.5 -> 2.0, median 3.0, q3 at 1.5 -> 3.0
        assert st["q1"] == 2.0
        assert st["median"] == 3.0
        assert st["q3"] == 3.0

    def test_single_model_no_crash(self, tmp_path):
        m = ScoreMatrix(("only",), ("d1", "d2"), [[1.0, 2.0]], "generic")
        path = tmp_path / "box.svg"
        emit_rank_boxplot_svg(m, path)
        assert len(glyphs(parse_svg(path), "g", "box")) == 1


class TestCherrypickPanels:
    def test_panel_count(self, tiny_matrix, tmp_path):
        report = run_audit(tiny_matrix, AuditConfig(n_max=3))
        path = tmp_path / "panels.svg"
        emit_cherrypick_panels_svg(report.curves, path)
        root = parse_svg(path)
        assert len(glyphs(root, "g", "panel")) == 3 * 3  # 3 curves x n_max 3
        assert len(glyphs(root, "rect", "highlight")) == 9

    def test_empty_curves(self, tmp_path):
        with pytest.raises(MismatchedCurveLengths):
            emit_cherrypick_panels_svg([], tmp_path / "x.svg")

    def test_mismatched_lengths(self, tiny_matrix, tmp_path):
        from bench_audit.audit import best_rank_curve

        a = best_rank_curve(tiny_matrix, "M1", 2)
        b = best_rank_curve(tiny_matrix, "M2", 3)
        with pytest.raises(MismatchedCurveLengths):
            emit_cherrypick_panels_svg([a, b], tmp_path / "x.svg")


class TestTopkBars:
    def test_bar_count(self, tmp_path):
        table = {n: {k: 0.5 for k in (1, 2, 3)} for n in range(1, 7)}
        path = tmp_path / "bars.svg"
        emit_topk_bars_svg(table, path)
        assert len(glyphs(parse_svg(path), "rect", "bar")) == 18

    def test_percentage_label(self, tmp_path):
        table = {4: {1: 0.46}}
        path = tmp_path / "bars.svg"
        emit_topk_bars_svg(table, path)
        labels = [el.text for el in glyphs(parse_svg(path), "text", "value")]
        assert "46%" in labels

    def test_all_zero_axes_still_drawn(self, tmp_path):
        table = {1: {1: 0.0}, 2: {1: 0.0}}
        path = tmp_path / "bars.svg"
        emit_topk_bars_svg(table, path)
        root = parse_svg(path)
        assert len(list(root.iter(f"{SVG_NS}line"))) >= 5


class TestSvgWellFormed:
    def test_all_emitters_produce_valid_self_contained_xml(
        self, tiny_matrix, tmp_path
    ):
        report = run_audit(tiny_matrix, AuditConfig(n_max=3))
        paths = {
            "box": tmp_path / "box.svg",
            "panels": tmp_path / "panels.svg",
            "bars": tmp_path / "bars.svg",
        }
        emit_rank_boxplot_svg(tiny_matrix, paths["box"])
        emit_cherrypick_panels_svg(report.curves, paths["panels"])
        emit_topk_bars_svg(report.top_k_table, paths["bars"])
        for path in paths.values():
            parse_svg(path)  # raises on malformed XML
            text = path.read_text()
            assert "http://" not in text.replace(
                "http://www.w3.org/2000/svg", ""
            )

import json

import numpy as np
import pytest

from bench_audit.errors import (
    DatasetMismatch,
    DuplicateLabel,
    DuplicateModel,
    DuplicateTriple,
    EmptyFile,
    MetricMismatch,
    NonContiguousSteps,
    NonFiniteValue,
    ParseError,
    ShapeMismatch,
)
from bench_audit.ingest import (
    load_dataset_csv,
    load_forecasts_csv,
    load_score_matrix_json,
    merge_scores,
    save_score_matrix_json,
)
from bench_audit.metrics import ScoreMatrix


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


class TestLoadDatasetCsv:
    def test_two_series(self, tmp_path):
        path = write(tmp_path, "d.csv", (
            "series_id,step,value\n"
            "a,1,1.0\na,2,2.0\na,3,3.0\na,4,4.0\n"
            "b,1,5.0\nb,2,6.0\nb,3,7.0\nb,4,8.0\n"
        ))
        ds = load_dataset_csv(path, "demo", 1, 1)
        assert ds.series_ids() == ["a", "b"]
        assert all(s.length == 4 for s in ds.series)

    def test_non_contiguous_steps(self, tmp_path):
        path = write(tmp_path, "d.csv",
                     "series_id,step,value\na,1,1\na,2,2\na,4,3\n")
        with pytest.raises(NonContiguousSteps, match="'a'.*step 4"):
            load_dataset_csv(path, "demo", 1, 1)

    def test_nan_value(self, tmp_path):
        path = write(tmp_path, "d.csv", "series_id,step,value\na,1,NaN\n")
        with pytest.raises(NonFiniteValue):
            load_dataset_csv(path, "demo", 1, 1)

    def test_bad_header(self, tmp_path):
        path = write(tmp_path, "d.csv", "id,t,v\na,1,1\n")
        with pytest.raises(ParseError):
            load_dataset_csv(path, "demo", 1, 1)

    def test_empty_file(self, tmp_path):
        path = write(tmp_path, "d.csv", "")
        with pytest.raises(EmptyFile):
            load_dataset_csv(path, "demo", 1, 1)

    def test_parse_error_reports_line(self, tmp_path):
        path = write(tmp_path, "d.csv",
                     "series_id,step,value\na,1,1\na,2,oops\n")
        with pytest.raises(ParseError, match=":3:"):
            load_dataset_csv(path, "demo", 1, 1)


class TestLoadForecastsCsv:
    def test_fragment(self, tmp_path):
        path = write(tmp_path, "f.csv", (
            "model,dataset,series_id,step,value\n"
            "nhits,d1,s1,1,1.5\nnhits,d1,s1,2,1.6\n"
            "nhits,d2,s1,1,2.5\n"
        ))
        fs = load_forecasts_csv(path)
        assert fs.models == ("nhits",)
        assert len(fs.forecasts) == 2
        assert fs.get("nhits", "d1", "s1").values == (1.5, 1.6)

    def test_duplicate_triple(self, tmp_path):
        path = write(tmp_path, "f.csv", (
            "model,dataset,series_id,step,value\n"
            "m,d,s,1,1.0\nm,d,s,1,2.0\n"
        ))
        with pytest.raises(DuplicateTriple):
            load_forecasts_csv(path)

    def test_non_contiguous(self, tmp_path):
        path = write(tmp_path, "f.csv", (
            "model,dataset,series_id,step,value\n"
            "m,d,s,1,1.0\nm,d,s,3,2.0\n"
        ))
        with pytest.raises(NonContiguousSteps):
            load_forecasts_csv(path)


class TestScoreMatrixJson:
    def test_round_trip(self, tmp_path):
        matrix = ScoreMatrix(
            ("a", "b"), ("d1", "d2", "d3"),
            np.array([[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]), "smape",
        )
        path = tmp_path / "scores.json"
        save_score_matrix_json(matrix, path)
        loaded = load_score_matrix_json(path)
        assert loaded.model_ids == matrix.model_ids
        assert loaded.dataset_names == matrix.dataset_names
        assert np.array_equal(loaded.scores, matrix.scores)
        assert loaded.metric_name == "smape"

    def test_shape_mismatch(self, tmp_path):
        path = write(tmp_path, "s.json", json.dumps({
            "metric": "smape", "models": ["a", "b", "c"],
            "datasets": ["d"], "scores": [[1.0], [2.0]],
        }))
        with pytest.raises(ShapeMismatch):
            load_score_matrix_json(path)

    def test_duplicate_label(self, tmp_path):
        path = write(tmp_path, "s.json", json.dumps({
            "metric": "smape", "models": ["a"],
            "datasets": ["d", "d"], "scores": [[1.0, 2.0]],
        }))
        with pytest.raises(DuplicateLabel):
            load_score_matrix_json(path)


class TestMergeScores:
    def make(self, models, metric="smape", base=0.0):
        return ScoreMatrix(
            models, ("d1", "d2"),
            np.arange(len(models) * 2, dtype=float).reshape(len(models), 2) + base,
            metric,
        )

    def test_row_concat(self):
        merged = merge_scores([self.make(("a", "b")), self.make(("c",), base=50)])
        assert merged.model_ids == ("a", "b", "c")
        assert merged.scores.shape == (3, 2)

    def test_metric_mismatch(self):
        with pytest.raises(MetricMismatch):
            merge_scores([self.make(("a",)), self.make(("b",), metric="mase")])

    def test_dataset_mismatch(self):
        other = ScoreMatrix(("b",), ("d2", "d1"), [[1.0, 2.0]], "smape")
        with pytest.raises(DatasetMismatch):
            merge_scores([self.make(("a",)), other])

    def test_duplicate_model(self):
        with pytest.raises(DuplicateModel):
            merge_scores([self.make(("a",)), self.make(("a",), base=9)])

    def test_associative(self):
        a, b, c = self.make(("a",)), self.make(("b",), base=5), self.make(("c",), base=9)
        left = merge_scores([merge_scores([a, b]), c])
        right = merge_scores([a, merge_scores([b, c])])
        assert left.model_ids == right.model_ids
        assert np.array_equal(left.scores, right.scores)

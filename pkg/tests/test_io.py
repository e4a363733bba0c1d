import csv
import json

import numpy as np
import pytest

from mvproj.errors import MalformedInput, NonFiniteValue
from mvproj.harness.generators import generate
from mvproj.harness.io import (
    power_to_csv, read_labeled_csv, read_paired_csv, report_to_csv, report_to_json,
    write_labeled_csv, write_null, write_paired_csv
)
from mvproj.harness.power import power_study
from mvproj.models.center import CenterSpec, FixedList, UniformBoundingBox
from mvproj.models.config import PipelineConfig, ScenarioSpec
from mvproj.pipeline import run_pipeline


def write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


def test_labeled_round_trip_is_bit_identical(tmp_path):
    data = generate(ScenarioSpec(generator="location-shift", n=15, q=3, shift=0.3, groups=3), 9)
    path = tmp_path / "data.csv"
    write_labeled_csv(data, path)
    again = read_labeled_csv(path, "group")
    np.testing.assert_array_equal(again.y, data.y)
    np.testing.assert_array_equal(again.labels, data.labels)


def test_paired_round_trip_is_bit_identical(tmp_path):
    data = generate(ScenarioSpec(generator="linear-dep", n=20, p=2, q=2, rho=0.4), 3)
    path = tmp_path / "pairs.csv"
    write_paired_csv(data, path)
    again = read_paired_csv(path, ["x1", "x2"], ["y1", "y2"])
    np.testing.assert_array_equal(again.x, data.x)
    np.testing.assert_array_equal(again.y, data.y)


def test_selected_columns(tmp_path):
    path = write(tmp_path / "d.csv", "a,g,b\n1.5,ctl,2\n2.5,trt,3\n3.5,ctl,4\n")
    data = read_labeled_csv(path, "g", ["b"])
    np.testing.assert_array_equal(data.y[:, 0], [2.0, 3.0, 4.0])
    assert data.label_names == ("ctl", "trt")
    both = read_labeled_csv(path, "g")
    assert both.q == 2


def test_missing_column(tmp_path):
    path = write(tmp_path / "d.csv", "y,g\n1,1\n2,2\n")
    with pytest.raises(MalformedInput):
        read_labeled_csv(path, "group")


def test_unparsable_number_names_the_cell(tmp_path):
    path = write(tmp_path / "d.csv", "y1,g\n1,1\n1e,2\n")
    with pytest.raises(MalformedInput) as e:
        read_labeled_csv(path, "g")
    assert "row 1, column 'y1'" in e.value.detail


def test_nan_cell(tmp_path):
    path = write(tmp_path / "d.csv", "x,y\n1,2\nnan,3\n")
    with pytest.raises(NonFiniteValue):
        read_paired_csv(path, ["x"], ["y"])


def test_ragged_and_empty_files(tmp_path):
    with pytest.raises(MalformedInput):
        read_labeled_csv(write(tmp_path / "r.csv", "y,g\n1,1,3\n"), "g")
    with pytest.raises(MalformedInput):
        read_labeled_csv(write(tmp_path / "e.csv", ""), "g")
    with pytest.raises(MalformedInput):
        read_labeled_csv(tmp_path / "missing.csv", "g")


@pytest.fixture
def report(two_groups):
    config = PipelineConfig(problem="two-sample", univariate="ks", b=9,
                            center_strategy=UniformBoundingBox(m=3))
    return run_pipeline(config, two_groups, timing=False)


def test_json_report_keys(report):
    payload = json.loads(report_to_json(report))
    assert set(payload) == {"method", "statistic", "p_value", "per_center", "B", "seed", "runtime_ms"}
    assert len(payload["per_center"]) == 3
    assert payload["runtime_ms"] is None


def test_csv_report_rows(report):
    rows = list(csv.reader(report_to_csv(report).splitlines()))
    assert rows[0][:4] == ["row", "center", "statistic", "p_value"]
    assert len(rows) == 1 + 3 + 1
    assert rows[-1][0] == "pooled"
    assert float(rows[-1][3]) == report.p_value
    assert rows[-1][4] == "9"


def test_csv_center_labels(two_groups):
    config = PipelineConfig(problem="two-sample", univariate="ks", b=9,
                            center_strategy=FixedList(centers=[CenterSpec.fixed((0.5, 1.0))]))
    rows = list(csv.reader(report_to_csv(run_pipeline(config, two_groups)).splitlines()))
    assert rows[1][1] == "0.5,1.0"


def test_power_csv():
    config = PipelineConfig(problem="two-sample", univariate="ks", b=9,
                            center_strategy=UniformBoundingBox(m=1))
    table = power_study(config, ScenarioSpec(generator="null-gaussian", n=8, replications=1))
    rows = list(csv.reader(power_to_csv(table).splitlines()))
    assert rows[0] == ["n", "replications", "rejections", "rate", "se"]
    assert rows[1][0] == "8" and rows[1][4] == ""


def test_write_null(tmp_path):
    path = tmp_path / "null.csv"
    write_null(np.array([0.25, 1.0]), path)
    assert path.read_text(encoding="utf-8").split() == ["null", "0.25", "1.0"]

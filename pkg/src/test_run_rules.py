"""
End-to-end tests for the command-line interface.
"""
import json
import logging
from pathlib import Path

import pandas as pd
import pytest

from run_rules import main
from shared.config import clear_config_cache

logger = logging.getLogger(__name__)

FAILURES_CSV = Path(__file__).resolve().parents[1] / "data" / "failures.csv"

WALKTHROUGH_TEXT = (
    "IF CPU ∈ [95, max)\n"
    "OR CPU ∈ [81, max) and MEM ∈ [85, max)\n"
    "THEN Label = 1\n"
    "ELSE Label = 0\n"
)

FAILURES_YAML = """
dataset:
  path: {data}
schema:
  label_column: Label
  target_class: "1"
  features:
    - {{name: CPU, domain: [0, 100]}}
    - {{name: MEM, domain: [0, 100]}}
discretization:
  cuts: {{CPU: [81, 95], MEM: [85]}}
ensemble:
  n_estimators: 1
  n_features: 2
output:
  model_path: {model}
"""


@pytest.fixture(autouse=True)
def restore_logging():
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)
    clear_config_cache()


@pytest.fixture
def failures_config(tmp_path):
    path = tmp_path / "failures.yaml"
    path.write_text(FAILURES_YAML.format(data=FAILURES_CSV, model=tmp_path / "model.json"), encoding="utf-8")
    return str(path)


def read_predictions(path):
    return pd.read_csv(path, dtype=str, keep_default_na=False)


def test_train_prints_rules_and_is_reproducible(failures_config, tmp_path, capsys):
    assert main(["train", "-c", failures_config]) == 0
    assert capsys.readouterr().out == WALKTHROUGH_TEXT

    second = tmp_path / "model2.json"
    assert main(["train", "-c", failures_config, "--model", str(second)]) == 0
    first_bytes = (tmp_path / "model.json").read_bytes()
    assert first_bytes == second.read_bytes()
    metadata = json.loads(first_bytes)["metadata"]
    assert metadata["fingerprint"]
    assert "output" not in metadata["config"]


def test_invalid_configuration_exits_before_reading_data(tmp_path, capsys):
    code = main(["train", "--data", str(tmp_path / "absent.csv"), "--alpha", "1.5"])
    assert code == 1
    assert "run_config:" in capsys.readouterr().err
    assert not (tmp_path / "model.json").exists()


def test_predict_writes_labels_and_fired_rules(failures_config, tmp_path):
    assert main(["train", "-c", failures_config]) == 0
    output = tmp_path / "predictions.csv"
    code = main(["predict", "--model", str(tmp_path / "model.json"), "--data", str(FAILURES_CSV),
                 "--output", str(output)])
    assert code == 0

    table = read_predictions(output)
    assert list(table.columns) == ["row_id", "prediction", "fired_rules"]
    assert table["row_id"].tolist() == [str(i) for i in range(1, 9)]
    assert table["prediction"].tolist() == ["1", "0", "1", "0", "0", "0", "0", "0"]
    assert table["fired_rules"].tolist()[:3] == ["1", "", "2"]


def test_predict_on_empty_files(failures_config, tmp_path):
    assert main(["train", "-c", failures_config]) == 0
    for name, content in (("header.csv", "CPU,MEM\n"), ("blank.csv", "")):
        data = tmp_path / name
        data.write_text(content, encoding="utf-8")
        output = tmp_path / f"predictions_{name}"
        code = main(["predict", "--model", str(tmp_path / "model.json"), "--data", str(data),
                     "--output", str(output)])
        assert code == 0
        assert output.read_text(encoding="utf-8") == "row_id,prediction,fired_rules\n"


def test_predict_rejects_bad_model_and_missing_column(failures_config, tmp_path, capsys):
    assert main(["train", "-c", failures_config]) == 0
    model = tmp_path / "model.json"

    data = tmp_path / "cpu_only.csv"
    data.write_text("CPU\n90\n", encoding="utf-8")
    code = main(["predict", "--model", str(model), "--data", str(data), "--output", str(tmp_path / "p.csv")])
    assert code == 2
    assert "MEM" in capsys.readouterr().err

    stored = json.loads(model.read_text(encoding="utf-8"))
    stored["format_version"] += 1
    future = tmp_path / "future.json"
    future.write_text(json.dumps(stored), encoding="utf-8")
    code = main(["predict", "--model", str(future), "--data", str(FAILURES_CSV), "--output", str(tmp_path / "p.csv")])
    assert code == 2
    assert "rule_model:" in capsys.readouterr().err


def test_synth_then_eval_with_inferred_schema(tmp_path, capsys):
    data = tmp_path / "separable.csv"
    code = main(["synth", "--n-records", "300", "--n-features", "3", "--separable", "50",
                 "--output", str(data)])
    assert code == 0
    sidecar = json.loads((tmp_path / "separable.csv.json").read_text(encoding="utf-8"))
    assert sidecar["n_records"] == 300

    reports = tmp_path / "reports"
    code = main(["eval", "--data", str(data), "--report-dir", str(reports), "--folds", "3"])
    assert code == 0
    assert capsys.readouterr().out.startswith("dataset: separable (3 folds)")
    for name in ("eval_table.csv", "eval_summary.json", "eval_report.txt", "cv_summary.png"):
        assert (reports / name).exists()

    code = main(["eval", "--data", str(data), "--features", "5", "--report-dir", str(reports)])
    assert code == 1


def test_bench_writes_one_row_per_configuration(tmp_path):
    reports = tmp_path / "bench"
    code = main(["bench", "--sizes", "100,200", "--bench-features", "3", "--ratios", "0.1",
                 "--estimators", "2", "--report-dir", str(reports)])
    assert code == 0
    table = pd.read_csv(reports / "bench_table.csv")
    assert table["n_records"].tolist() == [100, 200]
    assert (reports / "bench_table.csv.json").exists()
    assert (reports / "bench.png").exists()


def test_train_trace_file(failures_config, tmp_path):
    trace = tmp_path / "trace.txt"
    assert main(["train", "-c", failures_config, "--trace", str(trace)]) == 0
    lines = trace.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("estimator id=0")
    assert any(line.startswith("select iter=1 ") for line in lines)
    assert lines[-1] == "stop reason=covered rules=2"

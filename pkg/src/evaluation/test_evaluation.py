"""
Tests for the training pipeline, metrics, cross-validation and the bench.
"""
import json
import logging
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from binarizer import Discretization, FeatureBins, fit_discretization
from data_pipeline import FeatureSpec, Schema, binarize_labels, load_csv, synth_separable
from ensemble import EnsembleConfig
from evaluation import (
    BENCH_COLUMNS,
    REPORT_COLUMNS,
    PipelineConfig,
    bench_scaling,
    fold_partitions,
    interpretability_metrics,
    run_cv,
    score,
    train_pipeline,
)
from lattice import BitVector
from rule_model import build_ruleset, render
from shared.errors import ConfigError, DataError, SplitError

logger = logging.getLogger(__name__)

FAILURES_CSV = Path(__file__).resolve().parents[2] / "data" / "failures.csv"
FAILURE_CUTS = {"CPU": [81, 95], "MEM": [85]}

WALKTHROUGH_TEXT = (
    "IF CPU ∈ [95, max)\n"
    "OR CPU ∈ [81, max) and MEM ∈ [85, max)\n"
    "THEN Label = 1\n"
    "ELSE Label = 0\n"
)


def failures():
    schema = Schema(
        features=(FeatureSpec("CPU", domain=(0.0, 100.0)), FeatureSpec("MEM", domain=(0.0, 100.0))),
        label_column="Label",
        target_class="1",
    )
    ds = load_csv(str(FAILURES_CSV), schema)
    return ds, binarize_labels(ds)


def walkthrough_config():
    return PipelineConfig(cuts=FAILURE_CUTS, ensemble=EnsembleConfig(n_estimators=1, n_features=2))


def test_score_examples():
    assert score([1, 0, 1, 0], [1, 0, 1, 0]).f1 == 1.0
    assert score([0, 0, 0], [1, 0, 1]) == (0.0, 0.0, 0.0)
    scores = score([1, 1, 1, 0, 0], [1, 1, 0, 1, 0])
    assert scores.precision == pytest.approx(2 / 3)
    assert scores.recall == pytest.approx(2 / 3)
    assert scores.f1 == pytest.approx(2 / 3)
    assert score([0, 0], [0, 0]) == (0.0, 0.0, 0.0)
    assert score([], []) == (0.0, 0.0, 0.0)


def test_score_length_mismatch():
    with pytest.raises(DataError):
        score([1, 0], [1])


def test_score_is_permutation_invariant():
    rng = np.random.default_rng(2)
    for _ in range(50):
        predictions = rng.integers(0, 2, 40)
        labels = rng.integers(0, 2, 40)
        order = rng.permutation(40)
        assert score(predictions[order], labels[order]) == pytest.approx(score(predictions, labels))


def test_interpretability_metrics():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    walkthrough = build_ruleset([BitVector.from_string("11000"), BitVector.from_string("10010")], ds.schema, disc)
    assert interpretability_metrics(walkthrough) == (2, 1.5)
    assert interpretability_metrics(build_ruleset([], ds.schema, disc)) == (0, 0.0)

    schema = Schema(features=tuple(FeatureSpec(f"f{i}") for i in (1, 2, 3)), label_column="y", target_class="1")
    three = Discretization(
        features=tuple(FeatureBins(f"f{i}", "continuous", cuts=(50.0,), lo=0.0, hi=100.0) for i in (1, 2, 3)),
        threshold=6.0,
    )
    single = build_ruleset([BitVector.from_string("101010")], schema, three)
    assert interpretability_metrics(single) == (1, 3.0)


def test_train_pipeline_walkthrough():
    ds, labels = failures()
    model = train_pipeline(ds, labels, walkthrough_config(), metadata={"seed": 0})
    assert render(model.ruleset) == WALKTHROUGH_TEXT
    assert [str(p) for p in model.candidates] == ["11000", "10010"]
    audit = model.ruleset.metadata["selection"]
    assert audit["n_candidates"] == 2
    assert audit["n_unselected"] == 0
    assert audit["stop_reason"] == "covered"
    assert audit["rules"][0]["sources"] == [{"estimator": 0, "features": [0, 1]}]
    assert model.ruleset.metadata["seed"] == 0
    assert model.t_gen >= 0 and model.t_sel >= 0


def test_separable_data_cross_validation():
    ds, labels = synth_separable(300, 3, threshold=50, seed=1)
    report = run_cv(ds, labels, PipelineConfig(), folds=5, seed=0, dataset="separable")
    assert len(report.folds) == 5
    assert report.mean("f1") >= 0.95
    assert report.mean("n_rules") <= 3
    assert report.mean("mean_atoms") <= 2
    frame = report.to_frame()
    assert report.mean("f1") == pytest.approx(frame["f1"].mean())


def test_cross_validation_fits_on_training_rows_only():
    ds, labels = synth_separable(200, 2, threshold=40, seed=3)
    cfg = PipelineConfig(ensemble=EnsembleConfig(n_estimators=3, n_features=1))
    report = run_cv(ds, labels, cfg, folds=4, seed=5)
    partitions = fold_partitions(ds, labels, folds=4, seed=5)
    for fold, (train, test) in zip(report.folds, partitions):
        assert set(train).isdisjoint(test)
        expected = fit_discretization(ds.take(train), labels[train], cfg.threshold)
        assert fold.discretization == expected
    assert len({fold.discretization.features[0].cuts for fold in report.folds}) > 1


def test_cross_validation_is_deterministic():
    ds, labels = synth_separable(150, 3, threshold=60, seed=7)
    first = run_cv(ds, labels, PipelineConfig(), folds=3, seed=1)
    second = run_cv(ds, labels, PipelineConfig(), folds=3, seed=1)
    keys = ("f1", "precision", "recall", "n_rules", "mean_atoms")
    assert [[getattr(f, k) for k in keys] for f in first.folds] == [[getattr(f, k) for k in keys] for f in second.folds]

    parallel = run_cv(ds, labels, PipelineConfig(), folds=3, seed=1, n_jobs=2)
    assert [f.f1 for f in parallel.folds] == [f.f1 for f in first.folds]
    assert [f.discretization for f in parallel.folds] == [f.discretization for f in first.folds]


def test_cross_validation_needs_enough_positives():
    ds, labels = failures()
    with pytest.raises(SplitError):
        run_cv(ds, labels, walkthrough_config(), folds=5)


def test_report_files(tmp_path):
    ds, labels = synth_separable(100, 2, threshold=50, seed=0)
    report = run_cv(ds, labels, PipelineConfig(), folds=3, dataset="tiny",
                    config={"alpha": 0.7}, fingerprint="abc123")
    paths = report.write(str(tmp_path / "report"))
    table = pd.read_csv(paths["table"])
    assert tuple(table.columns) == REPORT_COLUMNS
    assert list(table["fold"]) == [0, 1, 2]
    assert set(table["dataset"]) == {"tiny"}
    summary = json.loads(Path(paths["summary"]).read_text(encoding="utf-8"))
    assert summary["fingerprint"] == "abc123"
    assert summary["config"] == {"alpha": 0.7}
    assert summary["metrics"]["f1"]["mean"] == pytest.approx(report.mean("f1"), abs=1e-6)
    text = Path(paths["text"]).read_text(encoding="utf-8")
    assert text.startswith("dataset: tiny (3 folds)")


def test_bench_emits_one_row_per_combination():
    table = bench_scaling([100, 200], [3], [0.1, 0.5], PipelineConfig(), repeats=2)
    assert tuple(table.columns) == BENCH_COLUMNS
    assert len(table) == 4
    assert list(zip(table["n_records"], table["ratio"])) == [(100, 0.1), (100, 0.5), (200, 0.1), (200, 0.5)]
    assert (table["t_gen"] > 0).all()
    assert (table["t_sel"] >= 0).all()


def test_bench_validation():
    cfg = PipelineConfig()
    with pytest.raises(ConfigError):
        bench_scaling([200_000], [3], [0.1], cfg)
    with pytest.raises(ConfigError):
        bench_scaling([100], [60], [0.1], cfg)
    with pytest.raises(ConfigError):
        bench_scaling([100], [1], [0.1], cfg)
    with pytest.raises(ConfigError):
        bench_scaling([100], [3], [0.1], cfg, repeats=0)


@pytest.mark.slow
def test_generation_dominates_selection_at_desk_scale():
    table = bench_scaling([10_000, 20_000], [10], [0.01, 0.1, 0.5], PipelineConfig())
    assert (table["t_gen"] >= table["t_sel"]).all()

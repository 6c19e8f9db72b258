"""
Tests for ChiMerge discretization, inverse one-hot encoding and point decoding.
"""
import logging
import math
from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from binarizer import (
    BitLayout,
    Discretization,
    FeatureBins,
    Interval,
    binarize,
    chi_square,
    chimerge,
    decode_point,
    encode_rows,
    encode_value,
    fit_discretization,
)
from data_pipeline import CATEGORICAL, FeatureSpec, RawDataset, Schema, binarize_labels, load_csv
from lattice import BitVector, leq
from shared.errors import ConfigError, LatticeError, UnsatisfiableRuleError

logger = logging.getLogger(__name__)

FAILURES_CSV = Path(__file__).resolve().parents[2] / "data" / "failures.csv"
FAILURE_CUTS = {"CPU": [81, 95], "MEM": [85]}


def failures():
    schema = Schema(
        features=(FeatureSpec("CPU", domain=(0.0, 100.0)), FeatureSpec("MEM", domain=(0.0, 100.0))),
        label_column="Label",
        target_class="1",
    )
    ds = load_csv(str(FAILURES_CSV), schema)
    return ds, binarize_labels(ds)


def example_one_discretization() -> Discretization:
    return Discretization(
        features=(
            FeatureBins("f1", "continuous", cuts=(40.0,), lo=0.0, hi=100.0),
            FeatureBins("f2", "continuous", cuts=(30.0, 60.0), lo=0.0, hi=100.0),
        ),
        threshold=6.0,
    )


def bv(text: str) -> BitVector:
    return BitVector.from_string(text)


def test_chi_square_known_values():
    assert chi_square([[0, 1], [1, 1]]) == pytest.approx(0.75)
    assert chi_square([[0, 3], [0, 2]]) == 0.0
    # an empty column contributes nothing
    assert chi_square([[2, 0], [3, 0]]) == 0.0


def test_chimerge_threshold_limits():
    values = np.array([1.0, 2.0, 3.0, 4.0, 1.0, 2.0])
    labels = np.array([0, 1, 0, 1, 1, 0])
    assert len(chimerge(values, labels, threshold=0.0)) == 3
    assert chimerge(values, labels, threshold=math.inf) == []


def test_chimerge_keeps_separating_cut():
    values = np.arange(40, dtype=float)
    labels = (values >= 20).astype(int)
    assert chimerge(values, labels, threshold=6.0) == [20.0]


def test_chimerge_interval_cap():
    rng = np.random.default_rng(0)
    values = np.round(rng.uniform(0, 100, 300), 1)
    labels = rng.integers(0, 2, 300)
    assert len(chimerge(values, labels, threshold=0.0, max_intervals=4)) == 3


def test_chimerge_constant_feature():
    assert chimerge(np.full(5, 7.0), np.array([0, 1, 0, 1, 1]), threshold=6.0) == []


def test_fit_discretization_supplied_cuts():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    cpu, mem = disc.features
    assert [str(i) for i in cpu.intervals()] == ["[0, 81)", "[81, 95)", "[95, 100]"]
    assert [str(i) for i in mem.intervals()] == ["[0, 85)", "[85, 100]"]
    assert disc.widths == [3, 2]


def test_fit_discretization_rejects_bad_input():
    ds, labels = failures()
    with pytest.raises(ConfigError):
        fit_discretization(ds, labels, threshold=-1.0)
    with pytest.raises(ConfigError):
        fit_discretization(ds, labels, threshold=6.0, cuts={"DISK": [1]})
    with pytest.raises(ConfigError):
        fit_discretization(ds, labels, threshold=6.0, cuts={"CPU": [0]})


def test_fit_discretization_no_merge_and_full_merge():
    ds, labels = failures()
    assert fit_discretization(ds, labels, threshold=0.0).widths == [6, 2]
    assert fit_discretization(ds, labels, threshold=math.inf).widths == [1, 1]


def test_encode_value():
    assert encode_value(1, 2) == bv("01")
    assert encode_value(2, 3) == bv("101")
    assert encode_value(3, 3) == bv("110")
    assert encode_value(1, 1) == bv("0")
    with pytest.raises(LatticeError):
        encode_value(0, 3)
    with pytest.raises(LatticeError):
        encode_value(4, 3)


def test_example_one_record_encoding():
    disc = example_one_discretization()
    schema = Schema(features=(FeatureSpec("f1"), FeatureSpec("f2")), label_column="y", target_class="1")
    ds = RawDataset.from_frame(pd.DataFrame({"f1": [33.1], "f2": [44.7]}), schema, require_label=False)
    layout = BitLayout.from_discretization(disc)
    row = BitVector.from_array(encode_rows(ds, disc)[0])
    assert layout.format(row) == "01 101"


def test_binarize_failures_dataset():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    bds = binarize(ds, labels, disc)
    fmt = bds.layout.format
    assert [fmt(v) for v in bds.d_plus] == ["110 01", "101 10"]
    assert [fmt(v) for v in bds.d_minus] == ["011 01", "011 10", "101 01"]
    assert bds.minus_counts == (2, 1, 3)
    assert bds.n_positive_rows == 2 and bds.n_negative_rows == 6
    assert bds.collisions == ()
    assert bds.d == 5


def test_binarize_reports_collisions():
    schema = Schema(features=(FeatureSpec("x"),), label_column="y", target_class="1")
    frame = pd.DataFrame({"x": [1.0, 1.0, 5.0], "y": ["1", "0", "0"]})
    ds = RawDataset.from_frame(frame, schema)
    labels = binarize_labels(ds)
    disc = fit_discretization(ds, labels, threshold=0.0)
    bds = binarize(ds, labels, disc)
    assert [bds.layout.format(v) for v in bds.collisions] == ["01"]


def test_binarize_without_positives():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    bds = binarize(ds, np.zeros_like(labels), disc)
    assert bds.d_plus == ()
    assert len(bds.d_minus) == 5


def test_encoded_records_are_mutually_incomparable():
    """Distinct inverse one-hot vectors are never ordered."""
    rng = np.random.default_rng(3)
    widths = [3, 4, 2]
    for _ in range(500):
        x = np.concatenate([encode_value(int(rng.integers(1, m + 1)), m).to_array() for m in widths])
        y = np.concatenate([encode_value(int(rng.integers(1, m + 1)), m).to_array() for m in widths])
        a, b = BitVector.from_array(x), BitVector.from_array(y)
        if a != b:
            assert not leq(a, b) and not leq(b, a)
        assert a.zeros == len(widths)


def test_decode_round_trip_recovers_interval():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    layout = BitLayout.from_discretization(disc)
    matrix = encode_rows(ds, disc)
    for i in range(ds.n):
        conditions = decode_point(BitVector.from_array(matrix[i]), layout, disc)
        assert len(conditions) == 2
        for condition in conditions:
            assert len(condition.ranges) == 1
            assert condition.holds(ds.column(condition.feature)[i])


def test_decode_point_examples():
    disc = example_one_discretization()
    layout = BitLayout.from_discretization(disc)
    f1, f2 = decode_point(bv("01100"), layout, disc)
    assert (f1.feature, [str(r) for r in f1.ranges]) == ("f1", ["[0, 40)"])
    assert (f2.feature, [str(r) for r in f2.ranges]) == ("f2", ["[30, 100]"])
    assert decode_point(bv("00000"), layout, disc) == []


def test_decode_failure_points():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=6.0, cuts=FAILURE_CUTS)
    layout = BitLayout.from_discretization(disc)
    (cpu,) = decode_point(layout.parse("110 00"), layout, disc)
    assert cpu.feature == "CPU"
    assert cpu.ranges == (Interval(95.0, 100.0, first=False, last=True),)
    cpu, mem = decode_point(layout.parse("100 10"), layout, disc)
    assert [str(r) for r in cpu.ranges] == ["[81, 100]"]
    assert [str(r) for r in mem.ranges] == ["[85, 100]"]


def test_decode_rejects_all_ones_span():
    disc = example_one_discretization()
    layout = BitLayout.from_discretization(disc)
    with pytest.raises(UnsatisfiableRuleError):
        decode_point(bv("11000"), layout, disc)


def test_decode_split_ranges():
    disc = example_one_discretization()
    layout = BitLayout.from_discretization(disc)
    (f2,) = decode_point(bv("00010"), layout, disc)
    assert [str(r) for r in f2.ranges] == ["[0, 30)", "[60, 100]"]
    assert f2.holds(10) and f2.holds(70) and not f2.holds(45)


def test_out_of_range_values_clamp():
    disc = example_one_discretization()
    schema = Schema(features=(FeatureSpec("f1"), FeatureSpec("f2")), label_column="y", target_class="1")
    ds = RawDataset.from_frame(pd.DataFrame({"f1": [-5.0, 150.0], "f2": [1e6, -1.0]}), schema,
                               require_label=False)
    rows = encode_rows(ds, disc)
    layout = BitLayout.from_discretization(disc)
    assert [layout.format(BitVector.from_array(r)) for r in rows] == ["01 110", "10 011"]


def test_categorical_buckets_and_unseen_values():
    schema = Schema(features=(FeatureSpec("colour", kind=CATEGORICAL),), label_column="y", target_class="1")
    train = RawDataset.from_frame(pd.DataFrame({"colour": ["red", "blue", "red"], "y": ["1", "0", "0"]}), schema)
    disc = fit_discretization(train, binarize_labels(train), threshold=6.0)
    assert disc.features[0].categories == ("blue", "red")
    test = RawDataset.from_frame(pd.DataFrame({"colour": ["red", "green"]}), schema, require_label=False)
    rows = encode_rows(test, disc)
    assert rows.tolist() == [[True, False], [False, False]]
    layout = BitLayout.from_discretization(disc)
    (condition,) = decode_point(bv("10"), layout, disc)
    assert condition.categories == ("red",)


def test_discretization_dict_form():
    ds, labels = failures()
    disc = fit_discretization(ds, labels, threshold=math.inf, cuts=FAILURE_CUTS)
    assert Discretization.from_dict(disc.to_dict()) == disc
    layout = BitLayout.from_discretization(disc)
    assert BitLayout.from_dict(layout.to_dict()) == layout

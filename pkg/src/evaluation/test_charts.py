"""
Tests for the evaluation charts.
"""
import base64
import logging

import pandas as pd

from binarizer import Discretization
from evaluation import BENCH_COLUMNS, EvalReport, FoldResult, generate_bench_chart, generate_cv_chart

logger = logging.getLogger(__name__)

PNG_MAGIC = b"\x89PNG"


def sample_report():
    disc = Discretization(features=(), threshold=6.0)
    folds = [
        FoldResult(fold=i, f1=f1, precision=p, recall=r, n_rules=n, mean_atoms=1.5, t_gen=0.2, t_sel=0.01,
                   n_candidates=10, discretization=disc)
        for i, (f1, p, r, n) in enumerate([(0.9, 0.95, 0.86, 3), (0.8, 0.75, 0.86, 4), (1.0, 1.0, 1.0, 2)])
    ]
    return EvalReport(dataset="sample", folds=folds)


def sample_bench():
    rows = [
        (1000, 10, 0.1, 1, 0.5, 0.05, 0.02, 0.0, 40.0, 3.0),
        (2000, 10, 0.1, 1, 1.6, 0.10, 0.04, 0.0, 55.0, 4.0),
    ]
    return pd.DataFrame(rows, columns=list(BENCH_COLUMNS))


def test_cv_chart_generation(tmp_path):
    output = tmp_path / "charts" / "cv.png"
    chart = generate_cv_chart(sample_report(), str(output))
    assert chart["chart_type"] == "cv_summary"
    assert chart["file_path"] == str(output)
    assert output.read_bytes().startswith(PNG_MAGIC)
    assert base64.b64decode(chart["image_base64"]).startswith(PNG_MAGIC)


def test_bench_chart_without_file():
    chart = generate_bench_chart(sample_bench())
    assert chart["chart_type"] == "bench"
    assert chart["file_path"] is None
    assert base64.b64decode(chart["image_base64"]).startswith(PNG_MAGIC)

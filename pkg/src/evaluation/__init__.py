"""
Evaluation

Training pipeline, metrics, cross-validation, the scaling bench and charts.
"""

from .bench import BENCH_COLUMNS, bench_scaling
from .charts import generate_bench_chart, generate_cv_chart, save_or_return_chart
from .cross_validation import REPORT_COLUMNS, EvalReport, FoldResult, SkippedFold, fold_partitions, run_cv
from .metrics import Scores, interpretability_metrics, score
from .pipeline import PipelineConfig, TrainedModel, selection_audit, train_pipeline

__all__ = [
    'BENCH_COLUMNS',
    'EvalReport',
    'FoldResult',
    'PipelineConfig',
    'REPORT_COLUMNS',
    'Scores',
    'SkippedFold',
    'TrainedModel',
    'bench_scaling',
    'fold_partitions',
    'generate_bench_chart',
    'generate_cv_chart',
    'interpretability_metrics',
    'run_cv',
    'save_or_return_chart',
    'score',
    'selection_audit',
    'train_pipeline',
]

"""
Stratified k-fold evaluation of the full training pipeline.

Each fold fits its own discretization, ensemble and selection on the training
rows only and is scored on the held-out rows. Folds share nothing, so they can
run concurrently.
"""

import logging
import os
import time
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from binarizer import Discretization
from data_pipeline import RawDataset, SplitSpec, split
from rule_model import predict_frame
from shared.config import DEFAULT_FOLDS, DEFAULT_SEED
from shared.errors import DataError
from shared.json_utils import dump_json

from .metrics import interpretability_metrics, score
from .pipeline import PipelineConfig, train_pipeline

logger = logging.getLogger(__name__)

REPORT_COLUMNS = ('dataset', 'fold', 'f1', 'precision', 'recall', 'n_rules', 'mean_atoms', 't_gen', 't_sel')
METRICS = ('f1', 'precision', 'recall', 'n_rules', 'mean_atoms', 't_gen', 't_sel')


@dataclass(frozen=True)
class FoldResult:
    fold: int
    f1: float
    precision: float
    recall: float
    n_rules: int
    mean_atoms: float
    t_gen: float
    t_sel: float
    n_candidates: int
    discretization: Discretization


@dataclass(frozen=True)
class SkippedFold:
    fold: int
    reason: str


@dataclass
class EvalReport:
    """Per-fold results with across-fold mean and (population) standard deviation."""

    dataset: str
    folds: List[FoldResult] = field(default_factory=list)
    skipped: List[SkippedFold] = field(default_factory=list)
    config: Dict[str, Any] = field(default_factory=dict)
    fingerprint: Optional[str] = None

    def values(self, metric: str) -> np.ndarray:
        return np.array([getattr(f, metric) for f in self.folds], dtype=float)

    def mean(self, metric: str) -> float:
        return float(np.mean(self.values(metric))) if self.folds else 0.0

    def std(self, metric: str) -> float:
        return float(np.std(self.values(metric))) if self.folds else 0.0

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {
                'dataset': self.dataset,
                'fold': f.fold,
                'f1': f.f1,
                'precision': f.precision,
                'recall': f.recall,
                'n_rules': f.n_rules,
                'mean_atoms': f.mean_atoms,
                't_gen': f.t_gen,
                't_sel': f.t_sel,
            }
            for f in self.folds
        ]
        return pd.DataFrame(rows, columns=list(REPORT_COLUMNS))

    def summary(self) -> Dict[str, Any]:
        return {
            'dataset': self.dataset,
            'folds': len(self.folds),
            'skipped': [{'fold': s.fold, 'reason': s.reason} for s in self.skipped],
            'metrics': {m: {'mean': round(self.mean(m), 6), 'std': round(self.std(m), 6)} for m in METRICS},
            'config': self.config,
            'fingerprint': self.fingerprint,
        }

    def to_text(self) -> str:
        lines = [f"dataset: {self.dataset} ({len(self.folds)} folds)"]
        for metric in METRICS:
            lines.append(f"{metric:<11}{self.mean(metric):.3f} ({self.std(metric):.3f})")
        for s in self.skipped:
            lines.append(f"fold {s.fold} skipped: {s.reason}")
        if self.fingerprint:
            lines.append(f"config: {self.fingerprint}")
        return '\n'.join(lines) + '\n'

    def write(self, report_dir: str) -> Dict[str, str]:
        """Write the fold table (CSV), the summary (JSON) and the text report."""
        os.makedirs(report_dir, exist_ok=True)
        paths = {
            'table': os.path.join(report_dir, 'eval_table.csv'),
            'summary': os.path.join(report_dir, 'eval_summary.json'),
            'text': os.path.join(report_dir, 'eval_report.txt'),
        }
        self.to_frame().to_csv(paths['table'], index=False, float_format='%.6g', lineterminator='\n')
        dump_json(self.summary(), paths['summary'])
        with open(paths['text'], 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(self.to_text())
        logger.info(f"Wrote evaluation report to {report_dir}")
        return paths


def _run_fold(fold: int, ds: RawDataset, labels: np.ndarray, train: np.ndarray, test: np.ndarray,
              cfg: PipelineConfig) -> Union[FoldResult, SkippedFold]:
    train_labels = labels[train]
    if not train_labels.any():
        logger.error(f"Fold {fold} has no positive training rows; skipping it", extra={'fold': fold})
        return SkippedFold(fold, 'no positive training rows')

    model = train_pipeline(ds.take(train), train_labels, cfg)
    predictions, _ = predict_frame(model.ruleset, ds.take(test))
    scores = score(predictions, labels[test])
    n_rules, mean_atoms = interpretability_metrics(model.ruleset)
    logger.info(f"Fold {fold}: F1 {scores.f1:.3f} with {n_rules} rules", extra={'fold': fold, 'n_rules': n_rules})
    return FoldResult(fold=fold, f1=scores.f1, precision=scores.precision, recall=scores.recall,
                      n_rules=n_rules, mean_atoms=mean_atoms, t_gen=model.t_gen, t_sel=model.t_sel,
                      n_candidates=len(model.candidates), discretization=model.discretization)


def run_cv(ds: RawDataset, labels: np.ndarray, cfg: PipelineConfig, folds: int = DEFAULT_FOLDS,
           seed: int = DEFAULT_SEED, n_jobs: int = 1, dataset: str = 'dataset',
           config: Optional[Dict[str, Any]] = None, fingerprint: Optional[str] = None) -> EvalReport:
    """
    Cross-validate the pipeline.

    Args:
        ds: Labeled records
        labels: Binarized labels
        cfg: Pipeline settings applied to every fold
        folds: Number of stratified folds
        seed: Fold shuffling seed
        n_jobs: Concurrent folds (joblib convention); estimators then run serially
        dataset: Name written into the report table
        config: Effective configuration echoed into the report
        fingerprint: Configuration fingerprint echoed into the report

    Returns:
        EvalReport with one entry per completed fold

    Raises:
        SplitError: The data cannot be split into `folds` stratified folds
        DataError: Every fold was skipped
    """
    partitions = fold_partitions(ds, labels, folds, seed)
    labels = np.asarray(labels, dtype=np.uint8)
    start = time.perf_counter()

    if n_jobs == 1:
        results = [_run_fold(i, ds, labels, train, test, cfg) for i, (train, test) in enumerate(partitions)]
    else:
        serial = replace(cfg, ensemble=replace(cfg.ensemble, n_jobs=1))
        results = Parallel(n_jobs=n_jobs)(
            delayed(_run_fold)(i, ds, labels, train, test, serial) for i, (train, test) in enumerate(partitions)
        )

    report = EvalReport(dataset=dataset, config=dict(config or {}), fingerprint=fingerprint)
    for result in results:
        if isinstance(result, SkippedFold):
            report.skipped.append(result)
        else:
            report.folds.append(result)
    if not report.folds:
        raise DataError("every cross-validation fold was skipped", module='evaluation')

    logger.info(f"{len(report.folds)}-fold evaluation of {dataset}: F1 {report.mean('f1'):.3f} "
                f"({report.std('f1'):.3f}), {report.mean('n_rules'):.1f} rules",
                extra={'duration_ms': round((time.perf_counter() - start) * 1000, 2)})
    return report


def fold_partitions(ds: RawDataset, labels: np.ndarray, folds: int = DEFAULT_FOLDS,
                    seed: int = DEFAULT_SEED) -> List[Tuple[np.ndarray, np.ndarray]]:
    """The (train, test) row indices `run_cv` uses for the same arguments."""
    return split(ds, labels, SplitSpec.stratified_kfold(folds, seed))

"""
Classification and interpretability metrics.
"""

import logging
from typing import NamedTuple, Sequence, Tuple

import numpy as np
from sklearn.metrics import precision_recall_fscore_support

from rule_model import RuleSet
from shared.errors import DataError

logger = logging.getLogger(__name__)


class Scores(NamedTuple):
    f1: float
    precision: float
    recall: float


def score(predictions: Sequence[int], labels: Sequence[int]) -> Scores:
    """
    F1, precision and recall on the target class (label 1).

    Every 0/0 ratio counts as 0.

    Raises:
        DataError: Predictions and labels differ in length
    """
    predictions = np.asarray(predictions, dtype=np.uint8)
    labels = np.asarray(labels, dtype=np.uint8)
    if len(predictions) != len(labels):
        logger.error(f"Cannot score {len(predictions)} predictions against {len(labels)} labels")
        raise DataError(f"{len(predictions)} predictions for {len(labels)} labels", module='evaluation')
    if len(labels) == 0:
        return Scores(0.0, 0.0, 0.0)
    precision, recall, f1, _ = precision_recall_fscore_support(
        labels, predictions, average='binary', pos_label=1, zero_division=0)
    return Scores(f1=float(f1), precision=float(precision), recall=float(recall))


def interpretability_metrics(rs: RuleSet) -> Tuple[int, float]:
    """Number of rules and mean atoms per rule; (0, 0.0) for an empty model."""
    if not rs.rules:
        return 0, 0.0
    return len(rs.rules), float(np.mean([rule.atoms for rule in rs.rules]))

"""
Ensemble

Random feature-subset ensemble of boundary learners merged by union.
"""

from .subsets import FeatureSubset, draw_subsets, embed_point, project, subset_for
from .trainer import EnsembleConfig, distinct_rows, run_estimator, train_ensemble

__all__ = [
    'EnsembleConfig',
    'FeatureSubset',
    'distinct_rows',
    'draw_subsets',
    'embed_point',
    'project',
    'run_estimator',
    'subset_for',
    'train_ensemble',
]

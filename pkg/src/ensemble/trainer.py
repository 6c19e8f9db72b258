"""
Ensemble Trainer

Runs E weak learners, each on its own random feature subset, and merges their
embedded boundary points by union. Estimators share nothing but the read-only
training matrices; the merge happens once, in estimator order, after every
estimator has finished.

The union is not guaranteed to be conflict-free in the full space: a point
learned on a projection can cover negatives that differ only on unselected
features. Rule selection deals with that.
"""

import logging
import time
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from binarizer import BinarizedDataset
from boundary_synthesis import BoundarySet, LearnerConfig, Provenance, find_boundary
from lattice import BitVector, from_matrix
from shared.config import DEFAULT_N_ESTIMATORS, DEFAULT_N_FEATURES, DEFAULT_N_JOBS, DEFAULT_SEED
from shared.errors import ConfigError

from .subsets import FeatureSubset, draw_subsets, embed_point

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EnsembleConfig:
    """Ensemble settings; `n_jobs` follows the joblib convention (-1 uses every core)."""

    n_estimators: int = DEFAULT_N_ESTIMATORS
    n_features: int = DEFAULT_N_FEATURES
    seed: int = DEFAULT_SEED
    learner: LearnerConfig = field(default_factory=LearnerConfig)
    n_jobs: int = DEFAULT_N_JOBS
    with_replacement: bool = False

    def __post_init__(self):
        if self.n_estimators < 1:
            raise ConfigError(f"n_estimators must be >= 1, got {self.n_estimators}", module='ensemble')
        if self.n_features < 1:
            raise ConfigError(f"n_features must be >= 1, got {self.n_features}", module='ensemble')
        if self.n_jobs == 0:
            raise ConfigError("n_jobs must not be 0", module='ensemble')


def distinct_rows(matrix: np.ndarray) -> np.ndarray:
    """Distinct rows in order of first appearance."""
    if matrix.shape[0] == 0:
        return matrix
    _, first = np.unique(matrix, axis=0, return_index=True)
    return matrix[np.sort(first)]


def run_estimator(plus: np.ndarray, minus: np.ndarray, columns: Sequence[int],
                  learner: LearnerConfig, trace=None) -> Tuple[List[int], int]:
    """
    Learn on one projection of the training matrices.

    Returns:
        Reduced boundary points as integers, and the number of projected
        positives that could not be resolved
    """
    columns = list(columns)
    d_plus = from_matrix(distinct_rows(plus[:, columns]))
    d_minus = from_matrix(distinct_rows(minus[:, columns]))
    boundary = find_boundary(d_plus, d_minus, learner, width=len(columns), trace=trace)
    return [point.bits for point in boundary], len(boundary.unresolvable)


def train_ensemble(bds: BinarizedDataset, cfg: EnsembleConfig, trace=None,
                   subsets: Optional[List[FeatureSubset]] = None) -> BoundarySet:
    """
    Train every estimator and return the union of their boundary points.

    Args:
        bds: Binarized training set
        cfg: Ensemble settings
        trace: Optional learner trace sink; forces serial execution
        subsets: Pre-drawn subsets, drawn from `cfg` when omitted

    Returns:
        BoundarySet over the full width; a point found by several estimators
        appears once and lists each of them in its provenance
    """
    n_total = len(bds.layout.names)
    if cfg.n_features > n_total:
        raise ConfigError(f"n_features={cfg.n_features} exceeds the {n_total} features of the data set",
                          module='ensemble')
    if subsets is None:
        subsets = draw_subsets(bds.layout, cfg.n_estimators, cfg.n_features, cfg.seed,
                               with_replacement=cfg.with_replacement)

    union = BoundarySet(width=bds.d)
    if not bds.d_plus:
        logger.warning("No positive vectors; every estimator contributes nothing")
        return union

    plus, minus = bds.plus_matrix(), bds.minus_matrix()
    learners = [replace(cfg.learner, seed=s.learner_seed) for s in subsets]
    start = time.perf_counter()

    if trace is not None:
        results = []
        for subset, learner in zip(subsets, learners):
            trace('estimator', id=subset.estimator_id, features=list(subset.features))
            results.append(run_estimator(plus, minus, subset.columns, learner, trace))
    else:
        results = Parallel(n_jobs=cfg.n_jobs)(
            delayed(run_estimator)(plus, minus, subset.columns, learner)
            for subset, learner in zip(subsets, learners)
        )

    for subset, (points, unresolvable) in zip(subsets, results):
        mask = subset.mask
        reduced_width = len(subset.columns)
        if not points:
            logger.warning(f"Estimator {subset.estimator_id} produced no boundary points",
                           extra={'estimator': subset.estimator_id})
        source = Provenance(subset.estimator_id, subset.features)
        for bits in points:
            union.add(embed_point(BitVector(bits, reduced_width), mask), source)
        logger.debug(f"Estimator {subset.estimator_id} on features {list(subset.features)}: "
                     f"{len(points)} points, {unresolvable} unresolvable projected positives",
                     extra={'estimator': subset.estimator_id})

    duration_ms = round((time.perf_counter() - start) * 1000, 2)
    logger.info(f"Ensemble of {len(subsets)} estimators produced {len(union)} distinct candidates",
                extra={'n_candidates': len(union), 'duration_ms': duration_ms})
    return union

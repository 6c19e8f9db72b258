"""
Train/test partitions and stratified folds.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from sklearn.model_selection import StratifiedKFold, train_test_split

from shared.errors import ConfigError, SplitError

from .loader import RawDataset

logger = logging.getLogger(__name__)

HOLDOUT = 'holdout'
STRATIFIED_KFOLD = 'stratified_kfold'

Partition = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class SplitSpec:
    kind: str = STRATIFIED_KFOLD
    fraction: float = 0.25
    k: int = 5
    seed: int = 0

    def __post_init__(self):
        if self.kind == HOLDOUT:
            if not 0.0 < self.fraction < 1.0:
                raise ConfigError(f"holdout fraction must be in (0, 1), got {self.fraction}", module='data_pipeline')
        elif self.kind == STRATIFIED_KFOLD:
            if self.k < 2:
                raise ConfigError(f"fold count must be at least 2, got {self.k}", module='data_pipeline')
        else:
            raise ConfigError(f"unknown split kind '{self.kind}'", module='data_pipeline')

    @classmethod
    def holdout(cls, fraction: float, seed: int = 0) -> 'SplitSpec':
        return cls(kind=HOLDOUT, fraction=fraction, seed=seed)

    @classmethod
    def stratified_kfold(cls, k: int, seed: int = 0) -> 'SplitSpec':
        return cls(kind=STRATIFIED_KFOLD, k=k, seed=seed)


def split(ds: RawDataset, labels: np.ndarray, spec: SplitSpec) -> List[Partition]:
    """
    Partition row indices into (train, test) pairs.

    Holdout returns a single pair, stratified when both classes allow it.
    Stratified k-fold returns k pairs whose test parts partition the rows,
    each fold holding the class ratio within one sample.

    Args:
        ds: Dataset being split
        labels: Binarized labels (1 = target class)
        spec: Split request

    Returns:
        List of (train_indices, test_indices), indices sorted ascending

    Raises:
        SplitError: If the data cannot satisfy the request
    """
    labels = np.asarray(labels, dtype=np.uint8)
    n = len(labels)
    if n != ds.n:
        raise SplitError(f"{n} labels for {ds.n} rows", module='data_pipeline')
    indices = np.arange(n)
    positives = int(labels.sum())
    negatives = n - positives

    if spec.kind == HOLDOUT:
        n_test = int(np.ceil(spec.fraction * n))
        if n_test < 1 or n_test >= n:
            raise SplitError(
                f"holdout fraction {spec.fraction} leaves an empty side on {n} rows", module='data_pipeline')
        stratify = labels if min(positives, negatives) >= 2 and n_test >= 2 and n - n_test >= 2 else None
        train, test = train_test_split(
            indices, test_size=n_test, random_state=spec.seed, shuffle=True, stratify=stratify)
        logger.debug(f"Holdout split: {len(train)} train / {len(test)} test")
        return [(np.sort(train), np.sort(test))]

    if positives == 0 or negatives == 0:
        raise SplitError("stratified folds need at least one positive and one negative row", module='data_pipeline')
    if spec.k > positives:
        raise SplitError(
            f"{spec.k} folds requested but only {positives} positive rows", module='data_pipeline')
    if spec.k > negatives:
        raise SplitError(
            f"{spec.k} folds requested but only {negatives} negative rows", module='data_pipeline')

    folds = StratifiedKFold(n_splits=spec.k, shuffle=True, random_state=spec.seed)
    partitions = [(np.sort(train), np.sort(test)) for train, test in folds.split(indices, labels)]
    logger.debug(f"Stratified {spec.k}-fold split over {n} rows ({positives} positive)")
    return partitions

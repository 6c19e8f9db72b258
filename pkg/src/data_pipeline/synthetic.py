"""
Synthetic datasets for scalability runs and separability checks.

Features are uniform on [0, 100] and rounded to two decimals, so a generated
dataset survives a CSV round trip unchanged.
"""

import logging
from typing import Tuple

import numpy as np
import pandas as pd

from shared.errors import ConfigError

from .loader import RawDataset
from .schema import FeatureSpec, Schema

logger = logging.getLogger(__name__)

SYNTH_DOMAIN = (0.0, 100.0)
SYNTH_LABEL_COLUMN = 'label'
SYNTH_TARGET = '1'


def _synthetic_schema(n_features: int) -> Schema:
    features = tuple(FeatureSpec(name=f"f{i + 1}", domain=SYNTH_DOMAIN) for i in range(n_features))
    return Schema(features=features, label_column=SYNTH_LABEL_COLUMN, target_class=SYNTH_TARGET)


def _uniform_features(rng: np.random.Generator, n_records: int, n_features: int) -> pd.DataFrame:
    lo, hi = SYNTH_DOMAIN
    values = np.round(rng.uniform(lo, hi, size=(n_records, n_features)), 2)
    return pd.DataFrame(values, columns=[f"f{i + 1}" for i in range(n_features)])


def _check_shape(n_records: int, n_features: int) -> None:
    if n_records < 1:
        raise ConfigError(f"n_records must be at least 1, got {n_records}", module='data_pipeline')
    if n_features < 1:
        raise ConfigError(f"n_features must be at least 1, got {n_features}", module='data_pipeline')


def synth_generate(n_records: int, n_features: int, imbalance_ratio: float,
                   seed: int = 0) -> Tuple[RawDataset, np.ndarray]:
    """
    Generate random records with random labels.

    Args:
        n_records: Number of rows
        n_features: Number of continuous features f1..fd on [0, 100]
        imbalance_ratio: Expected fraction of positive rows, in (0, 0.5]
        seed: Random seed

    Returns:
        Tuple of (dataset, binarized labels)
    """
    _check_shape(n_records, n_features)
    if not 0.0 < imbalance_ratio <= 0.5:
        raise ConfigError(f"imbalance_ratio must be in (0, 0.5], got {imbalance_ratio}", module='data_pipeline')

    rng = np.random.default_rng(seed)
    features = _uniform_features(rng, n_records, n_features)
    labels = (rng.random(n_records) < imbalance_ratio).astype(np.uint8)

    raw_labels = pd.Series(np.where(labels == 1, SYNTH_TARGET, '0'), dtype=object)
    dataset = RawDataset(schema=_synthetic_schema(n_features), features=features, labels=raw_labels)
    logger.info(f"Generated {n_records} x {n_features} synthetic records, {int(labels.sum())} positive")
    return dataset, labels


def synth_separable(n_records: int, n_features: int, threshold: float = 50.0,
                    seed: int = 0) -> Tuple[RawDataset, np.ndarray]:
    """
    Generate records whose label is exactly `f1 > threshold`.

    A one-condition rule on f1 separates the classes, which makes the dataset a
    sanity check for the whole learning pipeline.
    """
    _check_shape(n_records, n_features)
    lo, hi = SYNTH_DOMAIN
    if not lo < threshold < hi:
        raise ConfigError(f"threshold must lie inside {SYNTH_DOMAIN}, got {threshold}", module='data_pipeline')

    rng = np.random.default_rng(seed)
    features = _uniform_features(rng, n_records, n_features)
    labels = (features['f1'].to_numpy() > threshold).astype(np.uint8)

    raw_labels = pd.Series(np.where(labels == 1, SYNTH_TARGET, '0'), dtype=object)
    dataset = RawDataset(schema=_synthetic_schema(n_features), features=features, labels=raw_labels)
    logger.info(f"Generated {n_records} separable records on f1 > {threshold:g}")
    return dataset, labels

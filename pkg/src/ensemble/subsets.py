"""
Random feature subsets and the projection/embedding between a subset's bit
columns and the full lattice.

A subset of original features induces a bit mask over the full layout: the
union of the selected features' spans. Projecting keeps the masked columns in
order; embedding scatters a reduced point back and leaves every other bit at
0, so an embedded rule imposes no condition on unselected features.
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from binarizer import BitLayout
from lattice import BitVector
from shared.errors import ConfigError, LatticeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeatureSubset:
    """Features drawn for one estimator and the bit columns they induce."""

    estimator_id: int
    features: Tuple[int, ...]
    columns: Tuple[int, ...]
    width: int
    learner_seed: int = 0

    @property
    def mask(self) -> BitVector:
        return BitVector.from_indices(self.columns, self.width)


def subset_for(layout: BitLayout, estimator_id: int, features: Sequence[int], learner_seed: int = 0) -> FeatureSubset:
    features = tuple(sorted({int(f) for f in features}))
    return FeatureSubset(estimator_id=estimator_id, features=features,
                         columns=tuple(layout.columns(features)), width=layout.d,
                         learner_seed=learner_seed)


def draw_subsets(layout: BitLayout, n_estimators: int, n_features: int, seed: int,
                 with_replacement: bool = False) -> List[FeatureSubset]:
    """
    Draw one feature subset per estimator.

    Features are sampled without replacement inside an estimator and
    independently across estimators. With `with_replacement` the k draws may
    repeat a feature and the subset keeps the distinct ones, so it can hold
    fewer than k features. Every estimator gets its own child of
    `np.random.SeedSequence(seed)`, so the draw for estimator j does not
    depend on how many estimators come before or after it.

    Args:
        layout: Bit layout of the full data set
        n_estimators: Number of estimators E
        n_features: Features per estimator k
        seed: Root seed
        with_replacement: Draw the k features independently, duplicates collapse

    Returns:
        Subsets in estimator order
    """
    total = len(layout.names)
    if n_estimators < 1:
        raise ConfigError(f"n_estimators must be >= 1, got {n_estimators}", module='ensemble')
    if not 1 <= n_features <= total:
        raise ConfigError(f"n_features must be between 1 and {total}, got {n_features}", module='ensemble')

    subsets = []
    for estimator_id, child in enumerate(np.random.SeedSequence(seed).spawn(n_estimators)):
        rng = np.random.default_rng(child)
        features = rng.choice(total, size=n_features, replace=with_replacement)
        learner_seed = int(rng.integers(0, 2**31 - 1))
        subsets.append(subset_for(layout, estimator_id, features, learner_seed))
    logger.debug(f"Drew {n_estimators} feature subsets of size {n_features} from {total} features"
                 f"{' with replacement' if with_replacement else ''}")
    return subsets


def _check_mask(vector: BitVector, mask: BitVector, expected: int, what: str) -> None:
    if vector.width != expected:
        raise LatticeError(f"{what} has width {vector.width}, mask needs {expected}", module='ensemble')


def project(x: BitVector, mask: BitVector) -> BitVector:
    """Gather the masked bits of a full-width vector, in column order."""
    _check_mask(x, mask, mask.width, 'vector')
    bits = 0
    for column in mask.indices():
        bits = (bits << 1) | (1 if x.bits >> (x.width - 1 - column) & 1 else 0)
    return BitVector(bits, mask.popcount)


def embed_point(a_reduced: BitVector, mask: BitVector) -> BitVector:
    """
    Scatter a point learned on the masked columns back to full width.

    Raises:
        LatticeError: If the reduced width differs from the mask popcount
    """
    _check_mask(a_reduced, mask, mask.popcount, 'reduced point')
    width = mask.width
    bits = 0
    for position, column in enumerate(mask.indices()):
        if a_reduced.bits >> (a_reduced.width - 1 - position) & 1:
            bits |= 1 << (width - 1 - column)
    return BitVector(bits, width)

"""
Binarizer

ChiMerge discretization and inverse one-hot encoding of tabular records into
Boolean lattice vectors, with the decode map back to interval conditions.
"""

from .discretization import (
    Discretization,
    FeatureBins,
    Interval,
    chi_square,
    chimerge,
    fit_discretization,
)
from .encoding import (
    BinarizedDataset,
    BitLayout,
    Condition,
    binarize,
    decode_point,
    encode_rows,
    encode_value,
)

__all__ = [
    'BinarizedDataset',
    'BitLayout',
    'Condition',
    'Discretization',
    'FeatureBins',
    'Interval',
    'binarize',
    'chi_square',
    'chimerge',
    'decode_point',
    'encode_rows',
    'encode_value',
    'fit_discretization',
]

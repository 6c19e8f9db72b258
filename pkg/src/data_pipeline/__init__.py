"""
Data Pipeline

Schema handling, CSV ingestion, target-class binarization, train/test splits
and synthetic dataset generation.
"""

from .loader import RawDataset, binarize_labels, infer_csv_schema, load_csv, write_csv
from .schema import CATEGORICAL, CONTINUOUS, FeatureSpec, Schema, infer_schema
from .splits import HOLDOUT, STRATIFIED_KFOLD, SplitSpec, split
from .synthetic import synth_generate, synth_separable

__all__ = [
    'CATEGORICAL',
    'CONTINUOUS',
    'FeatureSpec',
    'HOLDOUT',
    'RawDataset',
    'STRATIFIED_KFOLD',
    'Schema',
    'SplitSpec',
    'binarize_labels',
    'infer_csv_schema',
    'infer_schema',
    'load_csv',
    'split',
    'synth_generate',
    'synth_separable',
    'write_csv',
]

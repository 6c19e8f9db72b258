"""
CSV ingestion and target-class binarization.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from shared.errors import DataError, SchemaMismatchError

from .schema import Schema, infer_schema

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RawDataset:
    """Parsed records.

    `features` holds one column per schema feature in schema order (floats for
    continuous features, strings for categorical ones). `labels` keeps the raw
    label text, or is None for unlabeled prediction input.
    """

    schema: Schema
    features: pd.DataFrame
    labels: Optional[pd.Series] = None

    @property
    def n(self) -> int:
        return len(self.features)

    def column(self, name: str) -> np.ndarray:
        return self.features[name].to_numpy()

    def take(self, indices) -> 'RawDataset':
        """Row subset, re-indexed from zero."""
        indices = np.asarray(indices, dtype=int)
        features = self.features.iloc[indices].reset_index(drop=True)
        labels = None if self.labels is None else self.labels.iloc[indices].reset_index(drop=True)
        return RawDataset(schema=self.schema, features=features, labels=labels)

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, schema: Schema, require_label: bool = True) -> 'RawDataset':
        """Validate and convert an in-memory frame (string or numeric cells)."""
        return _parse_frame(frame, schema, require_label=require_label, allow_empty=True)


def _parse_frame(frame: pd.DataFrame, schema: Schema, require_label: bool, allow_empty: bool) -> RawDataset:
    columns = [str(c) for c in frame.columns]
    for name in schema.feature_names:
        if name not in columns:
            logger.error(f"Input is missing feature column '{name}'")
            raise SchemaMismatchError("missing column", module='data_pipeline', column=name)
    has_label = schema.label_column in columns
    if require_label and not has_label:
        logger.error(f"Input is missing label column '{schema.label_column}'")
        raise SchemaMismatchError("missing label column", module='data_pipeline', column=schema.label_column)

    if len(frame) == 0 and not allow_empty:
        raise DataError("file contains a header but no records", module='data_pipeline')

    parsed = {}
    for feature in schema.features:
        raw = frame[feature.name]
        text = raw.astype(str).str.strip()
        missing = raw.isna() | (text == '')
        if missing.any():
            row = int(np.flatnonzero(missing.to_numpy())[0]) + 1
            raise DataError("missing value", module='data_pipeline', row=row, column=feature.name)
        if feature.is_continuous:
            values = pd.to_numeric(text, errors='coerce')
            bad = ~np.isfinite(values.to_numpy(dtype=float))
            if bad.any():
                position = int(np.flatnonzero(bad)[0])
                logger.error(f"Non-numeric cell in column '{feature.name}' at row {position + 1}")
                raise DataError(
                    f"expected a finite number, got {text.iloc[position]!r}",
                    module='data_pipeline', row=position + 1, column=feature.name)
            parsed[feature.name] = values.astype(float).to_numpy()
        else:
            parsed[feature.name] = text.to_numpy(dtype=object)

    features = pd.DataFrame(parsed, columns=schema.feature_names)
    labels = None
    if has_label:
        raw_labels = frame[schema.label_column]
        text = raw_labels.astype(str).str.strip()
        missing = raw_labels.isna() | (text == '')
        if missing.any():
            row = int(np.flatnonzero(missing.to_numpy())[0]) + 1
            raise DataError("missing label", module='data_pipeline', row=row, column=schema.label_column)
        labels = text.reset_index(drop=True)
    return RawDataset(schema=schema, features=features.reset_index(drop=True), labels=labels)


def _read_frame(path: str, empty_columns: Optional[Sequence[str]] = None) -> pd.DataFrame:
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except FileNotFoundError as e:
        raise DataError(f"file not found: {path}", module='data_pipeline') from e
    except pd.errors.EmptyDataError as e:
        if empty_columns is None:
            raise DataError(f"file is empty: {path}", module='data_pipeline') from e
        logger.warning(f"{path} is empty; reading it as a header-only file")
        return pd.DataFrame(columns=list(empty_columns), dtype=str)
    except (pd.errors.ParserError, UnicodeDecodeError) as e:
        raise DataError(f"cannot parse {path}: {e}", module='data_pipeline') from e

    frame.columns = [str(c).strip() for c in frame.columns]
    return frame


def infer_csv_schema(path: str, label_column: str, target_class: str) -> Schema:
    """Schema inferred from a CSV file: every non-label column becomes a feature."""
    frame = _read_frame(path)
    if label_column not in frame.columns:
        logger.error(f"Input is missing label column '{label_column}'")
        raise SchemaMismatchError("missing label column", module='data_pipeline', column=label_column)
    return infer_schema(frame, label_column, target_class)


def load_csv(path: str, schema: Schema, require_label: bool = True, allow_empty: bool = False) -> RawDataset:
    """
    Load a comma-separated file with a header row.

    Args:
        path: CSV file path (UTF-8)
        schema: Schema naming the columns to read
        require_label: Fail when the label column is absent
        allow_empty: Accept a header-only or 0-byte file (prediction input)

    Returns:
        RawDataset with continuous cells parsed as finite floats

    Raises:
        DataError: Unreadable or empty file, missing or non-numeric cell
        SchemaMismatchError: A required column is absent
    """
    frame = _read_frame(path, empty_columns=schema.feature_names if allow_empty else None)
    dataset = _parse_frame(frame, schema, require_label=require_label, allow_empty=allow_empty)
    logger.info(f"Loaded {dataset.n} records with {schema.n_features} features from {path}")
    return dataset


def write_csv(ds: RawDataset, path: str) -> None:
    """Write a dataset so that `load_csv` reads back the same records."""
    frame = ds.features.copy()
    if ds.labels is not None:
        frame[ds.schema.label_column] = ds.labels.to_numpy()
    frame.to_csv(path, index=False, lineterminator='\n')
    logger.debug(f"Wrote {ds.n} records to {path}")


def binarize_labels(ds: RawDataset) -> np.ndarray:
    """
    Map raw labels to 1 for the target class and 0 otherwise.

    Args:
        ds: Labeled dataset

    Returns:
        uint8 array with one entry per row
    """
    if ds.labels is None:
        raise DataError("dataset has no labels", module='data_pipeline', column=ds.schema.label_column)
    target = str(ds.schema.target_class)
    labels = (ds.labels.to_numpy(dtype=object) == target).astype(np.uint8)
    positives = int(labels.sum())
    if positives == 0:
        logger.warning(f"Target class '{target}' does not occur in the labels; all rows are negative")
    logger.debug(f"Binarized labels: {positives} positive, {ds.n - positives} negative")
    return labels

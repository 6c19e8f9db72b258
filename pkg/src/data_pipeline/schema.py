"""
Dataset schema: ordered features, label column and target class.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from shared.errors import ConfigError

logger = logging.getLogger(__name__)

CONTINUOUS = 'continuous'
CATEGORICAL = 'categorical'
FEATURE_KINDS = (CONTINUOUS, CATEGORICAL)


@dataclass(frozen=True)
class FeatureSpec:
    """One input feature.

    `domain` optionally declares the [lo, hi] range of a continuous feature;
    the discretizer uses it as the outer bounds of the first and last interval.
    """

    name: str
    kind: str = CONTINUOUS
    domain: Optional[Tuple[float, float]] = None

    @property
    def is_continuous(self) -> bool:
        return self.kind == CONTINUOUS

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {'name': self.name, 'kind': self.kind}
        if self.domain is not None:
            data['domain'] = [float(self.domain[0]), float(self.domain[1])]
        return data


@dataclass(frozen=True)
class Schema:
    features: Tuple[FeatureSpec, ...]
    label_column: str
    target_class: str
    _index: Dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [f.name for f in self.features]
        if not names:
            raise ConfigError("schema declares no features", module='data_pipeline')
        for feature in self.features:
            if not isinstance(feature.name, str) or not feature.name.strip():
                raise ConfigError("feature names must be non-empty", module='data_pipeline')
            if feature.kind not in FEATURE_KINDS:
                raise ConfigError(
                    f"feature '{feature.name}' has unknown kind '{feature.kind}'", module='data_pipeline')
            if feature.domain is not None:
                if not feature.is_continuous:
                    raise ConfigError(
                        f"feature '{feature.name}': domain applies to continuous features only",
                        module='data_pipeline')
                lo, hi = feature.domain
                if not lo <= hi:
                    raise ConfigError(
                        f"feature '{feature.name}': domain [{lo}, {hi}] is empty", module='data_pipeline')
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ConfigError(f"duplicate feature names: {duplicates}", module='data_pipeline')
        if not self.label_column:
            raise ConfigError("label column must be named", module='data_pipeline')
        if self.label_column in names:
            raise ConfigError(
                f"label column '{self.label_column}' is also listed as a feature", module='data_pipeline')
        self._index.update({name: i for i, name in enumerate(names)})

    @property
    def feature_names(self) -> List[str]:
        return [f.name for f in self.features]

    @property
    def n_features(self) -> int:
        return len(self.features)

    def feature(self, name: str) -> FeatureSpec:
        return self.features[self._index[name]]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label_column': self.label_column,
            'target_class': self.target_class,
            'features': [f.to_dict() for f in self.features],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Schema':
        """Build a schema from its config/model-file form."""
        try:
            features = []
            for item in data['features']:
                if isinstance(item, str):
                    features.append(FeatureSpec(name=item))
                    continue
                domain = item.get('domain')
                if domain is not None:
                    if len(domain) != 2:
                        raise ConfigError(
                            f"feature '{item.get('name')}': domain must be [lo, hi]", module='data_pipeline')
                    domain = (float(domain[0]), float(domain[1]))
                features.append(FeatureSpec(
                    name=str(item['name']),
                    kind=item.get('kind', CONTINUOUS),
                    domain=domain,
                ))
            return cls(
                features=tuple(features),
                label_column=str(data['label_column']),
                target_class=str(data['target_class']),
            )
        except (KeyError, TypeError) as e:
            raise ConfigError(f"incomplete schema definition: {e}", module='data_pipeline') from e


def infer_schema(frame: pd.DataFrame, label_column: str, target_class: str) -> Schema:
    """
    Derive a schema from a data frame: every non-label column is a feature,
    numeric columns are continuous and the rest categorical.

    Args:
        frame: Data with a header
        label_column: Name of the label column
        target_class: Label value treated as positive

    Returns:
        Schema with features in column order
    """
    features = []
    for column in frame.columns:
        if column == label_column:
            continue
        numeric = pd.to_numeric(frame[column], errors='coerce')
        kind = CONTINUOUS if numeric.notna().all() else CATEGORICAL
        features.append(FeatureSpec(name=str(column), kind=kind))
    logger.debug(f"Inferred schema with {len(features)} features from columns")
    return Schema(features=tuple(features), label_column=label_column, target_class=str(target_class))

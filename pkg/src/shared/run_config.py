"""
Run Configuration Files

A run is described by one YAML file. Each top-level key maps to a section
dataclass; command-line flags override file values through dotted keys
(``selection.alpha``). Every numeric range is validated before any data is
read, and the effective configuration is echoed, with its fingerprint, into
every artifact a command writes.
"""
import hashlib
import logging
import math
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Mapping, Optional, Tuple

import yaml

from data_pipeline import FeatureSpec, Schema

from .config import (
    DEFAULT_ALPHA,
    DEFAULT_FOLDS,
    DEFAULT_HEURISTIC,
    DEFAULT_MIN_WEIGHT,
    DEFAULT_N_ESTIMATORS,
    DEFAULT_N_FEATURES,
    DEFAULT_N_JOBS,
    DEFAULT_SAMPLE_ORDER,
    DEFAULT_SEED,
    DEFAULT_THRESHOLD,
    DEFAULT_TOP_K,
)
from .errors import ConfigError
from .json_utils import canonical_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DatasetSection:
    path: Optional[str] = None
    name: Optional[str] = None


@dataclass(frozen=True)
class SchemaSection:
    """Label column, target class and optional feature list (inferred from the data header when empty)."""

    label_column: str = 'label'
    target_class: str = '1'
    features: Tuple[Any, ...] = ()

    def build(self) -> Optional[Schema]:
        if not self.features:
            return None
        return Schema.from_dict({'label_column': self.label_column, 'target_class': self.target_class,
                                 'features': list(self.features)})


@dataclass(frozen=True)
class DiscretizationSection:
    threshold: float = DEFAULT_THRESHOLD
    cuts: Mapping[str, Tuple[float, ...]] = field(default_factory=dict)
    max_intervals: Optional[int] = None


@dataclass(frozen=True)
class EnsembleSection:
    n_estimators: int = DEFAULT_N_ESTIMATORS
    n_features: int = DEFAULT_N_FEATURES
    heuristic: str = DEFAULT_HEURISTIC
    sample_order: str = DEFAULT_SAMPLE_ORDER
    collisions: str = 'skip'
    with_replacement: bool = False


@dataclass(frozen=True)
class SelectionSection:
    alpha: float = DEFAULT_ALPHA
    top_k: Optional[int] = DEFAULT_TOP_K
    max_rules: Optional[int] = None
    min_weight: Optional[float] = DEFAULT_MIN_WEIGHT
    min_local_support: float = 0.0


@dataclass(frozen=True)
class RunSection:
    seed: int = DEFAULT_SEED
    n_jobs: int = DEFAULT_N_JOBS
    folds: int = DEFAULT_FOLDS


@dataclass(frozen=True)
class OutputSection:
    model_path: str = 'model.json'
    predictions_path: str = 'predictions.csv'
    report_dir: str = 'reports'
    trace_path: Optional[str] = None


@dataclass(frozen=True)
class BenchSection:
    sizes: Tuple[int, ...] = (10_000, 20_000)
    features: Tuple[int, ...] = (10,)
    ratios: Tuple[float, ...] = (0.01, 0.1, 0.5)
    repeats: int = 1


@dataclass(frozen=True)
class SynthSection:
    n_records: int = 10_000
    n_features: int = 10
    imbalance_ratio: float = 0.1
    separable_threshold: Optional[float] = None
    output_path: str = 'synthetic.csv'


SECTIONS = {
    'dataset': DatasetSection,
    'schema': SchemaSection,
    'discretization': DiscretizationSection,
    'ensemble': EnsembleSection,
    'selection': SelectionSection,
    'run': RunSection,
    'output': OutputSection,
    'bench': BenchSection,
    'synth': SynthSection,
}

# sections left out of echoed configurations and the fingerprint
LOCATION_SECTIONS = ('output',)


@dataclass(frozen=True)
class RunConfig:
    dataset: DatasetSection = field(default_factory=DatasetSection)
    schema: SchemaSection = field(default_factory=SchemaSection)
    discretization: DiscretizationSection = field(default_factory=DiscretizationSection)
    ensemble: EnsembleSection = field(default_factory=EnsembleSection)
    selection: SelectionSection = field(default_factory=SelectionSection)
    run: RunSection = field(default_factory=RunSection)
    output: OutputSection = field(default_factory=OutputSection)
    bench: BenchSection = field(default_factory=BenchSection)
    synth: SynthSection = field(default_factory=SynthSection)

    def validate(self) -> 'RunConfig':
        """
        Check every numeric range.

        Raises:
            ConfigError: Naming the first offending key
        """
        try:
            _validate(self)
        except TypeError as e:
            raise ConfigError(f"invalid value type: {e}", module='run_config') from e
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = {name: _plain(getattr(self, name)) for name in SECTIONS}
        data['schema']['features'] = [_feature_dict(f) for f in self.schema.features]
        return data

    def provenance(self) -> Dict[str, Any]:
        """Effective configuration echoed into artifacts; output locations are left out."""
        data = self.to_dict()
        for name in LOCATION_SECTIONS:
            data.pop(name)
        return data

    def fingerprint(self) -> str:
        """SHA-256 of the canonical JSON form of `provenance()`."""
        return hashlib.sha256(canonical_json(self.provenance()).encode('utf-8')).hexdigest()

    def with_overrides(self, overrides: Mapping[str, Any]) -> 'RunConfig':
        data = self.to_dict()
        _apply_overrides(data, overrides)
        return run_config_from_dict(data)


def _plain(value: Any) -> Any:
    if hasattr(value, '__dataclass_fields__'):
        return {f.name: _plain(getattr(value, f.name)) for f in fields(value)}
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float) and math.isinf(value):
        return 'inf'
    return value


def _feature_dict(item: Any) -> Any:
    if isinstance(item, FeatureSpec):
        return item.to_dict()
    return _plain(item)


def _check(condition: bool, key: str, message: str) -> None:
    if not condition:
        logger.error(f"Invalid configuration: {key} {message}")
        raise ConfigError(f"{key} {message}", module='run_config')


def _validate(cfg: RunConfig) -> None:
    d, e, s, r = cfg.discretization, cfg.ensemble, cfg.selection, cfg.run
    _check(d.threshold >= 0, 'discretization.threshold', f"must be >= 0, got {d.threshold}")
    _check(d.max_intervals is None or d.max_intervals >= 1, 'discretization.max_intervals',
           f"must be >= 1, got {d.max_intervals}")

    _check(e.n_estimators >= 1, 'ensemble.n_estimators', f"must be >= 1, got {e.n_estimators}")
    _check(e.n_features >= 1, 'ensemble.n_features', f"must be >= 1, got {e.n_features}")
    _check(isinstance(e.with_replacement, bool), 'ensemble.with_replacement',
           f"must be true or false, got {e.with_replacement!r}")
    if cfg.schema.features:
        n_declared = len(cfg.schema.features)
        _check(e.n_features <= n_declared, 'ensemble.n_features',
               f"must not exceed the {n_declared} schema features, got {e.n_features}")

    _check(0.0 <= s.alpha <= 1.0, 'selection.alpha', f"must be in [0, 1], got {s.alpha}")
    _check(s.top_k is None or s.top_k >= 1, 'selection.top_k', f"must be >= 1, got {s.top_k}")
    _check(s.max_rules is None or s.max_rules >= 1, 'selection.max_rules', f"must be >= 1, got {s.max_rules}")
    _check(0.0 <= s.min_local_support <= 1.0, 'selection.min_local_support',
           f"must be in [0, 1], got {s.min_local_support}")

    _check(r.seed >= 0, 'run.seed', f"must be >= 0, got {r.seed}")
    _check(r.n_jobs != 0, 'run.n_jobs', "must not be 0")
    _check(r.folds >= 2, 'run.folds', f"must be >= 2, got {r.folds}")

    b = cfg.bench
    _check(len(b.sizes) > 0 and min(b.sizes) >= 1, 'bench.sizes', f"must be positive, got {list(b.sizes)}")
    _check(len(b.features) > 0 and min(b.features) >= 1, 'bench.features',
           f"must be positive, got {list(b.features)}")
    _check(len(b.ratios) > 0 and all(0.0 < x <= 0.5 for x in b.ratios), 'bench.ratios',
           f"must lie in (0, 0.5], got {list(b.ratios)}")
    _check(b.repeats >= 1, 'bench.repeats', f"must be >= 1, got {b.repeats}")

    y = cfg.synth
    _check(y.n_records >= 1, 'synth.n_records', f"must be >= 1, got {y.n_records}")
    _check(y.n_features >= 1, 'synth.n_features', f"must be >= 1, got {y.n_features}")
    _check(0.0 < y.imbalance_ratio <= 0.5, 'synth.imbalance_ratio', f"must be in (0, 0.5], got {y.imbalance_ratio}")
    _check(y.separable_threshold is None or 0.0 < y.separable_threshold < 100.0, 'synth.separable_threshold',
           f"must be in (0, 100), got {y.separable_threshold}")


def _section(cls, data: Any, name: str):
    if data is None:
        return cls()
    if not isinstance(data, Mapping):
        raise ConfigError(f"section '{name}' must be a mapping", module='run_config')
    known = {f.name: f for f in fields(cls)}
    unknown = sorted(set(data) - set(known))
    if unknown:
        raise ConfigError(f"unknown key(s) in '{name}': {', '.join(unknown)}", module='run_config')
    values = {}
    for key, value in data.items():
        if isinstance(value, list):
            value = tuple(value)
        elif key == 'cuts' and isinstance(value, Mapping):
            value = {str(k): tuple(float(c) for c in v) for k, v in value.items()}
        elif value == 'inf':
            value = float('inf')
        values[key] = value
    return cls(**values)


def run_config_from_dict(data: Mapping[str, Any]) -> RunConfig:
    """Build and validate a RunConfig from its nested-mapping form."""
    if not isinstance(data, Mapping):
        raise ConfigError("configuration must be a mapping of sections", module='run_config')
    unknown = sorted(set(data) - set(SECTIONS))
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}", module='run_config')
    sections = {name: _section(cls, data.get(name), name) for name, cls in SECTIONS.items()}
    schema = sections['schema']
    sections['schema'] = replace(schema, label_column=str(schema.label_column),
                                 target_class=str(schema.target_class))
    cfg = RunConfig(**sections).validate()
    cfg.schema.build()
    return cfg


def _apply_overrides(data: Dict[str, Any], overrides: Mapping[str, Any]) -> None:
    for dotted, value in overrides.items():
        if value is None:
            continue
        section, _, key = dotted.partition('.')
        if section not in SECTIONS or not key:
            raise ConfigError(f"invalid override key '{dotted}'", module='run_config')
        if data.get(section) is None:
            data[section] = {}
        data[section][key] = value


def load_run_config(path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """
    Load a run configuration.

    Args:
        path: YAML file; defaults apply to everything when omitted
        overrides: Dotted keys (``run.seed``) taking precedence over the file;
            None values are ignored

    Returns:
        Validated RunConfig

    Raises:
        ConfigError: Unreadable file, unknown keys or out-of-range values
    """
    data: Dict[str, Any] = {}
    if path:
        try:
            with open(path, 'r', encoding='utf-8') as handle:
                loaded = yaml.safe_load(handle)
        except OSError as e:
            logger.error(f"Cannot read configuration file {path}: {e}")
            raise ConfigError(f"cannot read configuration file {path}: {e}", module='run_config') from e
        except yaml.YAMLError as e:
            logger.error(f"Malformed configuration file {path}: {e}")
            raise ConfigError(f"malformed configuration file {path}: {e}", module='run_config') from e
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigError(f"configuration file {path} must contain a mapping", module='run_config')
        data = {k: (dict(v) if isinstance(v, dict) else v) for k, v in (loaded or {}).items()}

    _apply_overrides(data, overrides or {})
    cfg = run_config_from_dict(data)
    logger.debug(f"Loaded run configuration {cfg.fingerprint()[:12]} from {path or 'defaults'}")
    return cfg

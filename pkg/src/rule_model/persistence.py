"""
Model file reading and writing.

The model file is indented, key-sorted JSON. It carries the schema, the
fitted cut points, the bit layout, every rule in both bit and interval form,
and free-form metadata (effective configuration, fingerprint, selection
audit). Saving the same model twice gives byte-identical files.
"""

import logging
from typing import Any, Dict

from binarizer import BitLayout, Discretization
from data_pipeline import Schema
from shared.errors import ConfigError, ModelFormatError, ModelVersionError
from shared.json_utils import dump_json, safe_json_load

from .rules import RuleSet, rules_from_dicts

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def ruleset_to_dict(rs: RuleSet) -> Dict[str, Any]:
    layout = rs.layout
    return {
        'format_version': FORMAT_VERSION,
        'schema': rs.schema.to_dict(),
        'negative_class': rs.negative_class,
        'discretization': rs.discretization.to_dict(),
        'layout': layout.to_dict(),
        'rules': [rule.to_dict(layout) for rule in rs.rules],
        'metadata': dict(rs.metadata),
    }


def ruleset_from_dict(data: Dict[str, Any]) -> RuleSet:
    """
    Rebuild a RuleSet from its file form.

    Raises:
        ModelVersionError: Unsupported format version
        ModelFormatError: Missing sections or inconsistent content
    """
    version = data.get('format_version')
    if version is None:
        raise ModelFormatError("model file has no format_version", module='rule_model')
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"model format version {version} is not supported (expected {FORMAT_VERSION})",
                                module='rule_model')

    missing = [key for key in ('schema', 'discretization', 'layout', 'rules') if key not in data]
    if missing:
        raise ModelFormatError(f"model file lacks section(s): {', '.join(missing)}", module='rule_model')

    try:
        schema = Schema.from_dict(data['schema'])
    except ConfigError as e:
        raise ModelFormatError(f"invalid schema: {e.message}", module='rule_model') from e
    disc = Discretization.from_dict(data['discretization'])
    layout = BitLayout.from_dict(data['layout'])
    if layout != BitLayout.from_discretization(disc):
        raise ModelFormatError("bit layout does not match the discretization", module='rule_model')
    if [f.name for f in disc.features] != schema.feature_names:
        raise ModelFormatError("discretization features do not match the schema", module='rule_model')
    if not isinstance(data['rules'], list):
        raise ModelFormatError("'rules' must be a list", module='rule_model')

    rules = rules_from_dicts(data['rules'], layout, disc)
    return RuleSet(rules=rules, schema=schema, discretization=disc,
                   negative_class=str(data.get('negative_class', '0')),
                   metadata=dict(data.get('metadata') or {}))


def save(rs: RuleSet, path: str) -> None:
    dump_json(ruleset_to_dict(rs), path)
    logger.info(f"Saved model with {len(rs.rules)} rules to {path}", extra={'n_rules': len(rs.rules)})


def load(path: str) -> RuleSet:
    """Read a model file written by `save`."""
    rs = ruleset_from_dict(safe_json_load(path, what='model'))
    logger.info(f"Loaded model with {len(rs.rules)} rules from {path}", extra={'n_rules': len(rs.rules)})
    return rs

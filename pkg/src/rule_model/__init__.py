"""
Rule Model

Rules decoded from boundary points, the rule-set classifier, its text
rendering and the versioned model file.
"""

from .persistence import FORMAT_VERSION, load, ruleset_from_dict, ruleset_to_dict, save
from .render import format_condition, format_range, format_rule, render
from .rules import (
    Prediction,
    Rule,
    RuleSet,
    build_ruleset,
    check_schema,
    firing_matrix,
    negative_class_of,
    point_to_rule,
    predict,
    predict_frame,
    predict_lattice,
)

__all__ = [
    'FORMAT_VERSION',
    'Prediction',
    'Rule',
    'RuleSet',
    'build_ruleset',
    'check_schema',
    'firing_matrix',
    'format_condition',
    'format_range',
    'format_rule',
    'load',
    'negative_class_of',
    'point_to_rule',
    'predict',
    'predict_frame',
    'predict_lattice',
    'render',
    'ruleset_from_dict',
    'ruleset_to_dict',
    'save',
]

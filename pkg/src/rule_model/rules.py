"""
Rule-set classifier built from selected boundary points.

A rule is the conjunction of the interval conditions decoded from one point;
a record is positive when at least one rule fires. Rules are numbered from 1
in prediction output.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from binarizer import BitLayout, Condition, Discretization, decode_point, encode_rows
from data_pipeline import CATEGORICAL, RawDataset, Schema
from lattice import BitVector, to_matrix
from shared.errors import LatticeError, ModelFormatError, SchemaMismatchError, UnsatisfiableRuleError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Rule:
    """Conjunction of feature conditions together with its source lattice point."""

    conditions: Tuple[Condition, ...]
    point: BitVector

    @property
    def atoms(self) -> int:
        return len(self.conditions)

    def fires(self, row: Mapping[str, Any]) -> bool:
        return all(condition.holds(row[condition.feature]) for condition in self.conditions)

    def to_dict(self, layout: BitLayout) -> Dict[str, Any]:
        return {
            'point': layout.format(self.point),
            'atoms': self.atoms,
            'conditions': [c.to_dict() for c in self.conditions],
        }


def point_to_rule(point: BitVector, layout: BitLayout, disc: Discretization) -> Rule:
    """
    Translate a boundary point into a rule.

    Raises:
        UnsatisfiableRuleError: A feature span of the point is all ones
    """
    return Rule(conditions=tuple(decode_point(point, layout, disc)), point=point)


class Prediction(NamedTuple):
    label: int
    fired: Tuple[int, ...]


@dataclass(frozen=True)
class RuleSet:
    """The deployable model: ordered rules plus everything needed to apply them."""

    rules: Tuple[Rule, ...]
    schema: Schema
    discretization: Discretization
    negative_class: str = '0'
    metadata: Mapping[str, Any] = field(default_factory=dict)

    @property
    def layout(self) -> BitLayout:
        return BitLayout.from_discretization(self.discretization)

    @property
    def target_class(self) -> str:
        return self.schema.target_class

    @property
    def label_column(self) -> str:
        return self.schema.label_column

    def __len__(self) -> int:
        return len(self.rules)


def build_ruleset(points: Sequence[BitVector], schema: Schema, disc: Discretization,
                  negative_class: str = '0', metadata: Optional[Mapping[str, Any]] = None) -> RuleSet:
    """
    Assemble a RuleSet from selected points, in selection order.

    Points whose decoding is unsatisfiable are rejected and logged; they can
    never fire, so dropping them does not change predictions.
    """
    layout = BitLayout.from_discretization(disc)
    rules = []
    for point in points:
        try:
            rules.append(point_to_rule(point, layout, disc))
        except UnsatisfiableRuleError as e:
            logger.warning(f"Rejected rule: {e.message}")
    return RuleSet(rules=tuple(rules), schema=schema, discretization=disc,
                   negative_class=negative_class, metadata=dict(metadata or {}))


def negative_class_of(labels: Sequence[Any], target_class: str) -> str:
    """Name used for the ELSE branch: the single non-target label, if there is one."""
    others = sorted({str(v) for v in labels} - {str(target_class)})
    if len(others) == 1:
        return others[0]
    return f"not {target_class}"


def predict(rs: RuleSet, row: Mapping[str, Any]) -> Prediction:
    """
    Classify one raw record.

    Args:
        rs: Model
        row: Mapping from feature name to raw value

    Returns:
        Prediction with label 1 when any rule fires, and the 1-based numbers of
        the rules that fired
    """
    missing = [name for name in rs.schema.feature_names if name not in row]
    if missing:
        raise SchemaMismatchError("feature missing from the record", module='rule_model', column=missing[0])
    fired = tuple(number for number, rule in enumerate(rs.rules, start=1) if rule.fires(row))
    return Prediction(label=1 if fired else 0, fired=fired)


def _condition_mask(condition: Condition, values: np.ndarray) -> np.ndarray:
    if condition.kind == CATEGORICAL:
        return np.isin(np.asarray(values, dtype=str), list(condition.categories))
    values = np.asarray(values, dtype=float)
    mask = np.zeros(len(values), dtype=bool)
    for interval in condition.ranges:
        above = np.ones(len(values), dtype=bool) if interval.first else values >= interval.lo
        below = np.ones(len(values), dtype=bool) if interval.last else values < interval.hi
        mask |= above & below
    return mask


def firing_matrix(rs: RuleSet, ds: RawDataset) -> np.ndarray:
    """Boolean (n_rows, n_rules) table of which rule fires on which record."""
    fired = np.zeros((ds.n, len(rs.rules)), dtype=bool)
    columns = {name: ds.column(name) for name in rs.schema.feature_names}
    for j, rule in enumerate(rs.rules):
        mask = np.ones(ds.n, dtype=bool)
        for condition in rule.conditions:
            mask &= _condition_mask(condition, columns[condition.feature])
        fired[:, j] = mask
    return fired


def predict_frame(rs: RuleSet, ds: RawDataset) -> Tuple[np.ndarray, List[Tuple[int, ...]]]:
    """
    Classify every record of a data set by interval membership.

    Returns:
        Tuple of (uint8 labels, 1-based fired rule numbers per record)
    """
    fired = firing_matrix(rs, ds)
    labels = fired.any(axis=1).astype(np.uint8)
    numbers = [tuple(int(j) + 1 for j in np.flatnonzero(row)) for row in fired]
    logger.debug(f"Predicted {ds.n} records, {int(labels.sum())} positive")
    return labels, numbers


def predict_lattice(rs: RuleSet, ds: RawDataset) -> np.ndarray:
    """Labels computed in the lattice: a record is positive when a rule's point lies below its vector."""
    if ds.n == 0 or not rs.rules:
        return np.zeros(ds.n, dtype=np.uint8)
    vectors = encode_rows(ds, rs.discretization, warn=False)
    points = to_matrix([rule.point for rule in rs.rules], rs.layout.d)
    # a <= x iff a has no set bit where x is 0
    conflicts = points.astype(np.int64) @ (~vectors).astype(np.int64).T
    return (conflicts == 0).any(axis=0).astype(np.uint8)


def check_schema(rs: RuleSet, schema: Schema) -> None:
    """Raise when a data schema lacks, or disagrees on, a model feature."""
    for spec in rs.schema.features:
        if spec.name not in schema.feature_names:
            raise SchemaMismatchError("model feature missing from the data", module='rule_model', column=spec.name)
        if schema.feature(spec.name).kind != spec.kind:
            raise SchemaMismatchError(f"{schema.feature(spec.name).kind} in the data but {spec.kind} in the model",
                                      module='rule_model', column=spec.name)


def rules_from_dicts(items: Sequence[Mapping[str, Any]], layout: BitLayout, disc: Discretization) -> Tuple[Rule, ...]:
    """Rebuild rules from their stored form, checking stored conditions against the points."""
    rules = []
    for number, item in enumerate(items, start=1):
        try:
            point = layout.parse(item['point'])
            stored = tuple(Condition.from_dict(c) for c in item['conditions'])
        except (KeyError, TypeError, LatticeError) as e:
            raise ModelFormatError(f"rule {number}: {e}", module='rule_model') from e
        try:
            rule = point_to_rule(point, layout, disc)
        except UnsatisfiableRuleError as e:
            raise ModelFormatError(f"rule {number}: {e.message}", module='rule_model') from e
        if rule.conditions != stored:
            raise ModelFormatError(f"rule {number}: stored conditions do not match point {item['point']}",
                                   module='rule_model')
        rules.append(rule)
    return tuple(rules)

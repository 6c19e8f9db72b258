"""
Human-readable rule text.

    IF CPU ∈ [95, max)
    OR CPU ∈ [81, max) and MEM ∈ [85, max)
    THEN Label = 1
    ELSE Label = 0

A range that reaches the top of a feature's domain ends in "max)". An empty
rule set renders with "IF (nothing)"; a rule without conditions with
"(always)".
"""

from typing import List

from binarizer import Condition, Interval
from data_pipeline import CATEGORICAL

from .rules import Rule, RuleSet

NOTHING = '(nothing)'
ALWAYS = '(always)'


def format_range(interval: Interval) -> str:
    if interval.last:
        return f"[{interval.lo:g}, max)"
    return f"[{interval.lo:g}, {interval.hi:g})"


def format_condition(condition: Condition) -> str:
    if condition.kind == CATEGORICAL:
        return f"{condition.feature} ∈ {{{', '.join(condition.categories)}}}"
    return f"{condition.feature} ∈ {', '.join(format_range(r) for r in condition.ranges)}"


def format_rule(rule: Rule) -> str:
    if not rule.conditions:
        return ALWAYS
    return ' and '.join(format_condition(c) for c in rule.conditions)


def render(rs: RuleSet) -> str:
    """Rule set as IF/OR/THEN/ELSE text, rules in model order."""
    lines: List[str] = []
    if not rs.rules:
        lines.append(f"IF {NOTHING}")
    for number, rule in enumerate(rs.rules):
        keyword = 'IF' if number == 0 else 'OR'
        lines.append(f"{keyword} {format_rule(rule)}")
    lines.append(f"THEN {rs.label_column} = {rs.target_class}")
    lines.append(f"ELSE {rs.label_column} = {rs.negative_class}")
    return '\n'.join(lines) + '\n'

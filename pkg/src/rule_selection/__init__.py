"""
Rule Selection

Coverage statistics, top-K candidate filtering and greedy weighted set cover.
"""

from .selection import (
    STOP_COVERED,
    STOP_EXHAUSTED,
    STOP_MAX_RULES,
    STOP_MIN_WEIGHT,
    STOP_NO_GAIN,
    SelectedRule,
    SelectionConfig,
    SelectionResult,
    filter_top_k,
    select_rules,
    weighted_set_cover,
)
from .stats import CandidateStats, compute_stats, cover_rows

__all__ = [
    'CandidateStats',
    'STOP_COVERED',
    'STOP_EXHAUSTED',
    'STOP_MAX_RULES',
    'STOP_MIN_WEIGHT',
    'STOP_NO_GAIN',
    'SelectedRule',
    'SelectionConfig',
    'SelectionResult',
    'compute_stats',
    'cover_rows',
    'filter_top_k',
    'select_rules',
    'weighted_set_cover',
]

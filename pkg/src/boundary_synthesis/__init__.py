"""
Boundary Synthesis

The weak learner: greedy boundary point search with the H1/H2 ranking
heuristics, plus an exhaustive enumerator used as a small-instance oracle.
"""

from .boundary import (
    COVER_COLLISIONS,
    DATASET_ORDER,
    H1,
    H2,
    SEEDED_SHUFFLE,
    SKIP_COLLISIONS,
    BoundarySet,
    LearnerConfig,
    Provenance,
)
from .learner import (
    IndexStats,
    SearchState,
    find_boundary,
    find_boundary_point,
    heuristic_key,
    select_best_index,
)
from .oracle import enumerate_boundary, is_boundary_point

__all__ = [
    'BoundarySet',
    'COVER_COLLISIONS',
    'DATASET_ORDER',
    'H1',
    'H2',
    'IndexStats',
    'LearnerConfig',
    'Provenance',
    'SEEDED_SHUFFLE',
    'SKIP_COLLISIONS',
    'SearchState',
    'enumerate_boundary',
    'find_boundary',
    'find_boundary_point',
    'heuristic_key',
    'is_boundary_point',
    'select_best_index',
]

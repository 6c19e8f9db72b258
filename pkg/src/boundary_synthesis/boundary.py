"""
Boundary set and learner configuration types.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from lattice import BitVector
from shared.errors import ConfigError, LatticeError

logger = logging.getLogger(__name__)

H1 = 'H1'
H2 = 'H2'
HEURISTICS = (H1, H2)

DATASET_ORDER = 'dataset'
SEEDED_SHUFFLE = 'shuffle'
SAMPLE_ORDERS = (DATASET_ORDER, SEEDED_SHUFFLE)

SKIP_COLLISIONS = 'skip'
COVER_COLLISIONS = 'cover'
COLLISION_POLICIES = (SKIP_COLLISIONS, COVER_COLLISIONS)


@dataclass(frozen=True)
class LearnerConfig:
    """Weak learner settings.

    H1 ranks candidate bits by (|S_i^0|, |D+_i^0|, distance) and favours fewer
    boundary points; H2 ranks by (distance, |S_i^0|, |D+_i^0|) and favours
    points with fewer set bits. `debug_checks` recomputes the incremental
    distances from scratch after every flip.

    `collisions` decides what happens to a positive that lies below a
    negative. `skip` leaves it out of the search, so every point is
    conflict-free. `cover` searches it like any other positive; such a
    negative never blocks a flip, so the resulting point covers it. The
    ensemble can use `cover` to let selection arbitrate mixed projections.
    """

    heuristic: str = H1
    sample_order: str = DATASET_ORDER
    seed: int = 0
    debug_checks: bool = False
    collisions: str = SKIP_COLLISIONS

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ConfigError(f"heuristic must be one of {HEURISTICS}, got '{self.heuristic}'",
                              module='boundary_synthesis')
        if self.sample_order not in SAMPLE_ORDERS:
            raise ConfigError(f"sample_order must be one of {SAMPLE_ORDERS}, got '{self.sample_order}'",
                              module='boundary_synthesis')
        if self.collisions not in COLLISION_POLICIES:
            raise ConfigError(f"collisions must be one of {COLLISION_POLICIES}, got '{self.collisions}'",
                              module='boundary_synthesis')


@dataclass(frozen=True)
class Provenance:
    """Which estimator produced a point, and over which original features."""

    estimator_id: int
    features: Tuple[int, ...]

    def to_dict(self) -> Dict:
        return {'estimator': self.estimator_id, 'features': list(self.features)}


@dataclass
class BoundarySet:
    """Ordered, duplicate-free set of lattice points with provenance."""

    width: int
    points: List[BitVector] = field(default_factory=list)
    provenance: Dict[BitVector, List[Provenance]] = field(default_factory=dict)
    unresolvable: List[BitVector] = field(default_factory=list)

    def add(self, point: BitVector, source: Optional[Provenance] = None) -> bool:
        """Add a point; an existing point only gains the extra provenance."""
        if point.width != self.width:
            raise LatticeError(f"point width {point.width} does not match boundary width {self.width}",
                               module='boundary_synthesis')
        added = point not in self.provenance
        if added:
            self.points.append(point)
            self.provenance[point] = []
        if source is not None and source not in self.provenance[point]:
            self.provenance[point].append(source)
        return added

    def sources(self, point: BitVector) -> List[Provenance]:
        return list(self.provenance.get(point, []))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self.provenance

    def as_set(self) -> set:
        return set(self.points)

    @classmethod
    def of(cls, points: Sequence[BitVector], width: int) -> 'BoundarySet':
        boundary = cls(width=width)
        for point in points:
            boundary.add(point)
        return boundary

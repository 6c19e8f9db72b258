"""
Exhaustive boundary enumeration for small lattices.

Every element a of {0,1}^d is tested at once with numpy: a is a boundary point
when it covers some positive, lies below no negative, and clearing any one of
its set bits would make it lie below a negative. Intended as a test oracle for
the greedy learner; the lattice is materialized, so widths are capped.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from lattice import BitVector
from shared.config import DEFAULT_ORACLE_WIDTH_CAP
from shared.errors import LatticeError

from .boundary import BoundarySet

logger = logging.getLogger(__name__)


def _below_any(lattice: np.ndarray, vectors: Sequence[BitVector]) -> np.ndarray:
    result = np.zeros(lattice.shape[0], dtype=bool)
    for vector in vectors:
        result |= (lattice & ~np.int64(vector.bits)) == 0
    return result


def enumerate_boundary(d_plus: Sequence[BitVector], d_minus: Sequence[BitVector],
                       width: Optional[int] = None,
                       cap: int = DEFAULT_ORACLE_WIDTH_CAP) -> BoundarySet:
    """
    Enumerate the complete boundary set.

    Args:
        d_plus: Positive vectors
        d_minus: Negative vectors
        width: Lattice width, inferred from the inputs when omitted
        cap: Largest width accepted

    Returns:
        BoundarySet with every boundary point, in ascending integer order

    Raises:
        LatticeError: If the width exceeds the cap
    """
    if width is None:
        if not d_plus and not d_minus:
            raise LatticeError("width is required for empty inputs", module='boundary_synthesis')
        width = (list(d_plus) or list(d_minus))[0].width
    if width > cap:
        raise LatticeError(f"exhaustive enumeration is capped at {cap} bits, got {width}",
                           module='boundary_synthesis')

    lattice = np.arange(1 << width, dtype=np.int64)
    conflict = _below_any(lattice, d_minus)
    covers_positive = np.zeros(lattice.shape[0], dtype=bool)
    for x in d_plus:
        # a covers x iff a has no bit outside x
        covers_positive |= (lattice & ~np.int64(x.bits)) == 0

    boundary_mask = covers_positive & ~conflict
    for position in range(width):
        bit = np.int64(1 << position)
        has_bit = (lattice & bit) != 0
        boundary_mask &= ~has_bit | conflict[lattice & ~bit]

    points = [BitVector(int(v), width) for v in np.flatnonzero(boundary_mask)]
    logger.debug(f"Enumerated {len(points)} boundary points over {1 << width} lattice elements")
    return BoundarySet.of(points, width)


def is_boundary_point(point: BitVector, d_plus: Sequence[BitVector], d_minus: Sequence[BitVector]) -> bool:
    """Check the three boundary conditions for a single point."""
    a = point.bits
    if not any(a & x.bits == a for x in d_plus):
        return False
    if any(a & y.bits == a for y in d_minus):
        return False
    for index in point.indices():
        lowered = a & ~point.mask(index)
        if not any(lowered & y.bits == lowered for y in d_minus):
            return False
    return True

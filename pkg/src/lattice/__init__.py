"""
Boolean Lattice Kernel

Bit-vector lattice elements with the containment order, single-bit flip-off
and the one-sided distance used by the boundary learner.
"""

from .bitvector import BitVector
from .kernels import (
    ABSENT,
    distance,
    distance_to_set,
    flip_off,
    from_matrix,
    leq,
    materialize,
    to_matrix,
)

__all__ = [
    'ABSENT',
    'BitVector',
    'distance',
    'distance_to_set',
    'flip_off',
    'from_matrix',
    'leq',
    'materialize',
    'to_matrix',
]

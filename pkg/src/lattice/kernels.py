"""
Order, flip and distance kernels over BitVector.

`leq(a, x)` holds when every set bit of `a` is set in `x`. The distance from
`x` to `y` counts the positions where `x` has a 1 and `y` a 0; it is not
symmetric. The distance to an empty set is ABSENT (None).
"""

from typing import Iterable, List, Optional, Sequence

import numpy as np

from shared.errors import LatticeError

from .bitvector import BitVector

# Distance to an empty set
ABSENT = None


def _check_width(x: BitVector, y: BitVector) -> None:
    if x.width != y.width:
        raise LatticeError(f"width mismatch: {x.width} vs {y.width}", module='lattice')


def leq(a: BitVector, x: BitVector) -> bool:
    """True iff `a` is below `x`, i.e. a rule with point `a` fires on `x`."""
    _check_width(a, x)
    return a.bits & x.bits == a.bits


def flip_off(x: BitVector, k: int) -> BitVector:
    """Clear bit `k`; clearing a zero bit returns `x` unchanged."""
    mask = x.mask(k)
    if not x.bits & mask:
        return x
    return BitVector(x.bits & ~mask, x.width)


def distance(x: BitVector, y: BitVector) -> int:
    """Number of positions where `x` is 1 and `y` is 0."""
    _check_width(x, y)
    return (x.bits & ~y.bits).bit_count()


def distance_to_set(x: BitVector, vectors: Iterable[BitVector]) -> Optional[int]:
    """Minimum distance from `x` to any member of `vectors`, ABSENT when empty."""
    best = ABSENT
    for y in vectors:
        d = distance(x, y)
        if best is None or d < best:
            best = d
            if best == 0:
                break
    return best


def materialize(indices: Iterable[int], width: int) -> BitVector:
    """BitVector with exactly `indices` set."""
    return BitVector.from_indices(indices, width)


def to_matrix(vectors: Sequence[BitVector], width: int) -> np.ndarray:
    """Stack vectors into an (n, width) boolean matrix."""
    matrix = np.zeros((len(vectors), width), dtype=bool)
    for row, vector in enumerate(vectors):
        if vector.width != width:
            raise LatticeError(f"width mismatch: {vector.width} vs {width}", module='lattice')
        if vector.bits:
            matrix[row] = vector.to_array()
    return matrix


def from_matrix(matrix: np.ndarray) -> List[BitVector]:
    """Inverse of `to_matrix`."""
    matrix = np.asarray(matrix, dtype=bool)
    if matrix.ndim != 2:
        raise LatticeError(f"expected a 2-d matrix, got shape {matrix.shape}", module='lattice')
    width = matrix.shape[1]
    if width == 0:
        return [BitVector(0, 0) for _ in range(matrix.shape[0])]
    weights = [1 << (width - 1 - i) for i in range(width)]
    return [BitVector(sum(w for w, bit in zip(weights, row) if bit), width) for row in matrix.tolist()]

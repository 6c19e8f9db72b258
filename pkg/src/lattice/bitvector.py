"""
Fixed-width Boolean lattice element.

A BitVector stores its bits in one Python int. Bit index 0 is the leftmost
character of the textual form, so "110 01" has indices {0, 1, 4} set.
"""

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from shared.errors import LatticeError


class BitVector:
    """Immutable bit vector of a fixed width with a cached popcount."""

    __slots__ = ('_bits', '_width', '_popcount')

    def __init__(self, bits: int, width: int):
        if width < 0:
            raise LatticeError(f"negative width {width}", module='lattice')
        if bits < 0 or bits >> width:
            raise LatticeError(f"value {bits} does not fit in {width} bits", module='lattice')
        self._bits = bits
        self._width = width
        self._popcount = bits.bit_count()

    @property
    def bits(self) -> int:
        return self._bits

    @property
    def width(self) -> int:
        return self._width

    @property
    def popcount(self) -> int:
        return self._popcount

    @property
    def zeros(self) -> int:
        return self._width - self._popcount

    def mask(self, index: int) -> int:
        """Integer mask selecting `index`."""
        if not 0 <= index < self._width:
            raise LatticeError(f"bit index {index} out of range for width {self._width}", module='lattice')
        return 1 << (self._width - 1 - index)

    def test(self, index: int) -> bool:
        return bool(self._bits & self.mask(index))

    def indices(self) -> Tuple[int, ...]:
        """Positions of the set bits, ascending."""
        return tuple(i for i in range(self._width) if self._bits >> (self._width - 1 - i) & 1)

    @classmethod
    def from_indices(cls, indices: Iterable[int], width: int) -> 'BitVector':
        bits = 0
        for index in indices:
            if not 0 <= index < width:
                raise LatticeError(f"bit index {index} out of range for width {width}", module='lattice')
            bits |= 1 << (width - 1 - index)
        return cls(bits, width)

    @classmethod
    def from_string(cls, text: str) -> 'BitVector':
        """Parse "110 01"; whitespace between groups is ignored."""
        digits = ''.join(text.split())
        if digits and set(digits) - {'0', '1'}:
            raise LatticeError(f"not a bit string: {text!r}", module='lattice')
        return cls(int(digits, 2) if digits else 0, len(digits))

    @classmethod
    def from_array(cls, row: Sequence[bool]) -> 'BitVector':
        bits = 0
        for value in row:
            bits = (bits << 1) | (1 if value else 0)
        return cls(bits, len(row))

    def to_array(self) -> np.ndarray:
        return np.array([self.test(i) for i in range(self._width)], dtype=bool)

    def to_string(self, groups: Optional[Sequence[int]] = None) -> str:
        """Bit string, optionally split into space-separated feature groups."""
        digits = format(self._bits, f'0{self._width}b') if self._width else ''
        if not groups:
            return digits
        if sum(groups) != self._width:
            raise LatticeError(f"groups {list(groups)} do not sum to width {self._width}", module='lattice')
        parts, start = [], 0
        for size in groups:
            parts.append(digits[start:start + size])
            start += size
        return ' '.join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"BitVector('{self.to_string()}')"

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self._bits == other._bits and self._width == other._width

    def __hash__(self) -> int:
        return hash((self._bits, self._width))

    def __reduce__(self):
        return (BitVector, (self._bits, self._width))

    def __setattr__(self, name, value):
        if hasattr(self, '_popcount'):
            raise AttributeError('BitVector is immutable')
        object.__setattr__(self, name, value)

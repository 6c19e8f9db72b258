"""
Inverse one-hot encoding into the Boolean lattice and decoding of lattice
points back into interval conditions.

A feature with m buckets takes m bits; a value in bucket z sets every bit of
the span except bit z. A lattice point permits the buckets whose bits are 0.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, Sequence, Tuple

import numpy as np

from data_pipeline import CATEGORICAL, RawDataset
from lattice import BitVector, from_matrix, to_matrix
from shared.errors import DataError, LatticeError, ModelFormatError, UnsatisfiableRuleError

from .discretization import Discretization, FeatureBins, Interval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BitLayout:
    """Bit span of every feature: feature f occupies [offsets[f], offsets[f] + widths[f])."""

    names: Tuple[str, ...]
    widths: Tuple[int, ...]

    @property
    def offsets(self) -> Tuple[int, ...]:
        offsets, position = [], 0
        for width in self.widths:
            offsets.append(position)
            position += width
        return tuple(offsets)

    @property
    def d(self) -> int:
        return sum(self.widths)

    def span(self, feature: int) -> range:
        start = self.offsets[feature]
        return range(start, start + self.widths[feature])

    def columns(self, features: Sequence[int]) -> List[int]:
        """Bit columns spanned by the given features, ascending."""
        return [bit for feature in sorted(features) for bit in self.span(feature)]

    def format(self, point: BitVector) -> str:
        return point.to_string(self.widths)

    def parse(self, text: str) -> BitVector:
        point = BitVector.from_string(text)
        if point.width != self.d:
            raise LatticeError(f"point '{text}' has width {point.width}, layout needs {self.d}", module='binarizer')
        return point

    def to_dict(self) -> Dict[str, Any]:
        return {'features': [{'name': n, 'offset': o, 'width': w}
                             for n, o, w in zip(self.names, self.offsets, self.widths)],
                'd': self.d}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'BitLayout':
        try:
            items = data['features']
            layout = cls(names=tuple(i['name'] for i in items), widths=tuple(int(i['width']) for i in items))
            if [int(i['offset']) for i in items] != list(layout.offsets) or int(data['d']) != layout.d:
                raise ModelFormatError("bit layout offsets are inconsistent", module='binarizer')
            return layout
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"invalid bit layout: {e}", module='binarizer') from e

    @classmethod
    def from_discretization(cls, disc: Discretization) -> 'BitLayout':
        return cls(names=tuple(f.name for f in disc.features), widths=tuple(disc.widths))


def encode_value(z: int, m: int) -> BitVector:
    """
    Inverse one-hot segment for interval `z` (1-based) of `m`.

    Args:
        z: Interval number, 1..m
        m: Number of intervals of the feature

    Returns:
        Width-m BitVector with a single zero at position z
    """
    if not 1 <= z <= m:
        raise LatticeError(f"interval {z} out of range 1..{m}", module='binarizer')
    full = (1 << m) - 1
    return BitVector(full & ~(1 << (m - z)), m)


def encode_rows(ds: RawDataset, disc: Discretization, warn: bool = True) -> np.ndarray:
    """
    Encode every record into an (n, d) boolean matrix.

    Continuous values outside the fitted range land in the outer interval.
    Unseen categories leave the whole feature span at zero, so no rule that
    constrains that feature fires on the record.
    """
    layout = BitLayout.from_discretization(disc)
    matrix = np.zeros((ds.n, layout.d), dtype=bool)
    for feature, bins in enumerate(disc.features):
        values = ds.column(bins.name)
        buckets = bins.buckets(values)
        start = layout.offsets[feature]
        known = buckets >= 0
        matrix[known, start:start + bins.m] = True
        rows = np.flatnonzero(known)
        matrix[rows, start + buckets[known]] = False
        if warn:
            outside = bins.out_of_range(values)
            if outside and bins.kind == CATEGORICAL:
                logger.warning(f"{outside} values of '{bins.name}' are unseen categories")
            elif outside:
                logger.warning(f"{outside} values of '{bins.name}' fall outside "
                               f"[{bins.lo:g}, {bins.hi:g}] and were clamped")
    return matrix


@dataclass(frozen=True)
class BinarizedDataset:
    """Distinct positive and negative lattice vectors with multiplicities.

    Vectors keep the order of their first appearance in the records.
    `collisions` lists vectors that occur in both classes.
    """

    layout: BitLayout
    d_plus: Tuple[BitVector, ...]
    plus_counts: Tuple[int, ...]
    d_minus: Tuple[BitVector, ...]
    minus_counts: Tuple[int, ...]
    collisions: Tuple[BitVector, ...] = ()

    @property
    def d(self) -> int:
        return self.layout.d

    @property
    def n_positive_rows(self) -> int:
        return sum(self.plus_counts)

    @property
    def n_negative_rows(self) -> int:
        return sum(self.minus_counts)

    def plus_matrix(self) -> np.ndarray:
        return to_matrix(self.d_plus, self.d)

    def minus_matrix(self) -> np.ndarray:
        return to_matrix(self.d_minus, self.d)


def _distinct(vectors: List[BitVector]) -> Tuple[Tuple[BitVector, ...], Tuple[int, ...]]:
    counts: Dict[BitVector, int] = {}
    for vector in vectors:
        counts[vector] = counts.get(vector, 0) + 1
    return tuple(counts), tuple(counts.values())


def binarize(ds: RawDataset, labels: np.ndarray, disc: Discretization) -> BinarizedDataset:
    """
    Turn labeled records into the distinct positive/negative vector sets.

    Args:
        ds: Records compatible with the discretization
        labels: Binarized labels
        disc: Fitted discretization

    Returns:
        BinarizedDataset with collision report
    """
    labels = np.asarray(labels)
    if len(labels) != ds.n:
        raise DataError(f"{len(labels)} labels for {ds.n} rows", module='binarizer')
    vectors = from_matrix(encode_rows(ds, disc))
    layout = BitLayout.from_discretization(disc)

    d_plus, plus_counts = _distinct([v for v, y in zip(vectors, labels) if y == 1])
    d_minus, minus_counts = _distinct([v for v, y in zip(vectors, labels) if y != 1])

    minus_set = set(d_minus)
    collisions = tuple(v for v in d_plus if v in minus_set)
    if collisions:
        shown = ', '.join(layout.format(v) for v in collisions[:5])
        logger.warning(f"{len(collisions)} vectors occur in both classes: {shown}")
    if not d_plus:
        logger.warning("No positive records after binarization")

    logger.info(f"Binarized {ds.n} records into {len(d_plus)} distinct positive and "
                f"{len(d_minus)} distinct negative vectors of width {layout.d}")
    return BinarizedDataset(layout=layout, d_plus=d_plus, plus_counts=plus_counts,
                            d_minus=d_minus, minus_counts=minus_counts, collisions=collisions)


@dataclass(frozen=True)
class Condition:
    """Permitted values of one feature: a union of merged ranges or a category set."""

    feature: str
    kind: str
    ranges: Tuple[Interval, ...] = ()
    categories: Tuple[str, ...] = ()

    def holds(self, value: Any) -> bool:
        if self.kind == CATEGORICAL:
            return str(value) in self.categories
        value = float(value)
        return any(interval.contains(value) for interval in self.ranges)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == CATEGORICAL:
            return {'feature': self.feature, 'kind': self.kind, 'categories': list(self.categories)}
        return {'feature': self.feature, 'kind': self.kind,
                'ranges': [[r.lo, r.hi, r.first, r.last] for r in self.ranges]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'Condition':
        try:
            if data['kind'] == CATEGORICAL:
                return cls(feature=data['feature'], kind=CATEGORICAL,
                           categories=tuple(str(c) for c in data['categories']))
            ranges = tuple(Interval(float(lo), float(hi), bool(first), bool(last))
                           for lo, hi, first, last in data['ranges'])
            return cls(feature=data['feature'], kind=data['kind'], ranges=ranges)
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"invalid rule condition: {e}", module='binarizer') from e


def _merge_runs(bins: FeatureBins, permitted: List[int]) -> Tuple[Interval, ...]:
    intervals = bins.intervals()
    runs: List[List[int]] = []
    for bucket in permitted:
        if runs and runs[-1][-1] == bucket - 1:
            runs[-1].append(bucket)
        else:
            runs.append([bucket])
    merged = []
    for run in runs:
        left, right = intervals[run[0]], intervals[run[-1]]
        merged.append(Interval(left.lo, right.hi, first=left.first, last=right.last))
    return tuple(merged)


def decode_point(point: BitVector, layout: BitLayout, disc: Discretization) -> List[Condition]:
    """
    Interval conditions encoded by a lattice point.

    For each feature the buckets whose bits are 0 are permitted; consecutive
    buckets merge into one range. A feature with an all-zero span imposes no
    condition and is omitted.

    Raises:
        UnsatisfiableRuleError: A feature span has every bit set
    """
    if point.width != layout.d:
        raise LatticeError(f"point width {point.width} does not match layout width {layout.d}",
                           module='binarizer')
    conditions = []
    for feature, bins in enumerate(disc.features):
        span = layout.span(feature)
        bits = [point.test(i) for i in span]
        if not any(bits):
            continue
        permitted = [z for z, bit in enumerate(bits) if not bit]
        if not permitted:
            raise UnsatisfiableRuleError(
                f"point {layout.format(point)} excludes every bucket of '{bins.name}'", module='binarizer')
        if bins.kind == CATEGORICAL:
            conditions.append(Condition(feature=bins.name, kind=CATEGORICAL,
                                        categories=tuple(bins.categories[z] for z in permitted)))
        else:
            conditions.append(Condition(feature=bins.name, kind=bins.kind, ranges=_merge_runs(bins, permitted)))
    return conditions

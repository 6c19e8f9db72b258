"""
ChiMerge Discretization

Bottom-up supervised interval merging for continuous features. Every distinct
value starts as its own interval; the adjacent pair whose class distributions
are most alike (lowest chi-square) is merged while that statistic stays below
the threshold. Categorical features keep one bucket per distinct value.

Intervals are half-open [lo, hi), the last one closed at the upper bound.
"""

import bisect
import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from data_pipeline import CATEGORICAL, CONTINUOUS, RawDataset
from shared.errors import ConfigError, ModelFormatError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    first: bool = False
    last: bool = False

    def contains(self, value: float) -> bool:
        """Membership with the outer intervals open towards infinity."""
        above = self.first or value >= self.lo
        below = self.last or value < self.hi
        return above and below

    def __str__(self) -> str:
        closing = ']' if self.last else ')'
        return f"[{self.lo:g}, {self.hi:g}{closing}"


def chi_square(counts: np.ndarray) -> float:
    """
    Chi-square statistic of a 2 x C contingency table.

    Cells whose expected count is zero contribute nothing.

    Args:
        counts: Array of shape (2, C), one row per adjacent interval

    Returns:
        Chi-square value (0 for identical class distributions)
    """
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total == 0:
        return 0.0
    expected = np.outer(counts.sum(axis=1), counts.sum(axis=0)) / total
    with np.errstate(divide='ignore', invalid='ignore'):
        cells = np.where(expected > 0, (counts - expected) ** 2 / expected, 0.0)
    return float(cells.sum())


def chimerge(values: np.ndarray, labels: np.ndarray, threshold: float,
             max_intervals: Optional[int] = None) -> List[float]:
    """
    Merge adjacent value intervals by chi-square.

    Args:
        values: Feature values (finite reals)
        labels: Class label per value
        threshold: Merge while the lowest adjacent chi-square is below this;
            0 disables merging, +inf merges everything
        max_intervals: Keep merging past the threshold until at most this
            many intervals remain

    Returns:
        Ascending cut points: the lower bound of every interval but the first
    """
    if threshold < 0:
        raise ConfigError(f"discretization threshold must be >= 0, got {threshold}", module='binarizer')

    table = pd.crosstab(pd.Series(values, name='value'), pd.Series(labels, name='label'))
    distinct = table.index.to_numpy(dtype=float)
    counts = table.to_numpy(dtype=float)
    if len(distinct) <= 1:
        return []

    # Runs of distinct values with the same pure class always merge first (chi-square 0)
    if threshold > 0:
        keep = [0]
        for i in range(1, len(distinct)):
            prev, cur = counts[keep[-1]], counts[i]
            pure_same = np.count_nonzero(prev) == 1 and np.count_nonzero(cur) == 1 \
                and np.argmax(prev) == np.argmax(cur)
            if pure_same:
                counts[keep[-1]] = prev + cur
            else:
                keep.append(i)
        distinct = distinct[keep]
        counts = counts[keep]

    n = len(distinct)
    # Doubly linked list over interval start positions
    nxt = list(range(1, n)) + [-1]
    prv = [-1] + list(range(n - 1))
    alive = [True] * n
    version = [0] * n
    heap: List[Tuple[float, int, int, int, int]] = []

    def push(left: int) -> None:
        right = nxt[left]
        if right < 0:
            return
        chi = chi_square(np.vstack([counts[left], counts[right]]))
        heapq.heappush(heap, (chi, left, right, version[left], version[right]))

    for start in range(n - 1):
        push(start)

    remaining = n
    while remaining > 1 and heap:
        chi, left, right, v_left, v_right = heap[0]
        stale = (not alive[left] or not alive[right] or nxt[left] != right
                 or version[left] != v_left or version[right] != v_right)
        if stale:
            heapq.heappop(heap)
            continue
        over_cap = max_intervals is not None and remaining > max_intervals
        if not (chi < threshold or over_cap):
            break
        heapq.heappop(heap)

        counts[left] = counts[left] + counts[right]
        alive[right] = False
        nxt[left] = nxt[right]
        if nxt[right] >= 0:
            prv[nxt[right]] = left
        version[left] += 1
        remaining -= 1
        if prv[left] >= 0:
            push(prv[left])
        push(left)

    cuts = [float(distinct[i]) for i in range(1, n) if alive[i]]
    logger.debug(f"ChiMerge kept {len(cuts) + 1} intervals out of {len(table)} distinct values")
    return cuts


@dataclass(frozen=True)
class FeatureBins:
    """Fitted buckets of one feature.

    Continuous features store interior cut points and outer bounds; categorical
    features store their sorted category list.
    """

    name: str
    kind: str
    cuts: Tuple[float, ...] = ()
    lo: float = 0.0
    hi: float = 0.0
    categories: Tuple[str, ...] = ()
    _lookup: Dict[str, int] = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        self._lookup.update({c: i for i, c in enumerate(self.categories)})

    @property
    def m(self) -> int:
        if self.kind == CATEGORICAL:
            return len(self.categories)
        return len(self.cuts) + 1

    def intervals(self) -> List[Interval]:
        bounds = [self.lo] + list(self.cuts) + [self.hi]
        m = self.m
        return [Interval(bounds[i], bounds[i + 1], first=(i == 0), last=(i == m - 1)) for i in range(m)]

    def bucket(self, value: Any) -> int:
        """0-based bucket of a value; -1 for an unseen category.

        Continuous values below the first or above the last interval land in
        that outer interval.
        """
        if self.kind == CATEGORICAL:
            return self._lookup.get(str(value), -1)
        return bisect.bisect_right(self.cuts, float(value))

    def buckets(self, values: np.ndarray) -> np.ndarray:
        if self.kind == CATEGORICAL:
            return np.array([self._lookup.get(str(v), -1) for v in values], dtype=int)
        return np.searchsorted(np.asarray(self.cuts, dtype=float), np.asarray(values, dtype=float), side='right')

    def out_of_range(self, values: np.ndarray) -> int:
        """Count continuous values outside [lo, hi] (clamped into the outer intervals)."""
        if self.kind == CATEGORICAL:
            return int(sum(1 for v in values if str(v) not in self._lookup))
        values = np.asarray(values, dtype=float)
        return int(np.count_nonzero((values < self.lo) | (values > self.hi)))

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == CATEGORICAL:
            return {'name': self.name, 'kind': self.kind, 'categories': list(self.categories)}
        return {'name': self.name, 'kind': self.kind, 'cuts': [float(c) for c in self.cuts],
                'lo': float(self.lo), 'hi': float(self.hi)}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'FeatureBins':
        try:
            if data['kind'] == CATEGORICAL:
                return cls(name=data['name'], kind=CATEGORICAL,
                           categories=tuple(str(c) for c in data['categories']))
            return cls(name=data['name'], kind=CONTINUOUS, cuts=tuple(float(c) for c in data['cuts']),
                       lo=float(data['lo']), hi=float(data['hi']))
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"invalid discretization entry: {e}", module='binarizer') from e


@dataclass(frozen=True)
class Discretization:
    features: Tuple[FeatureBins, ...]
    threshold: float

    @property
    def widths(self) -> List[int]:
        return [f.m for f in self.features]

    def feature(self, name: str) -> FeatureBins:
        for bins in self.features:
            if bins.name == name:
                return bins
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        threshold = self.threshold if math.isfinite(self.threshold) else 'inf'
        return {'threshold': threshold, 'features': [f.to_dict() for f in self.features]}

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> 'Discretization':
        try:
            features = tuple(FeatureBins.from_dict(item) for item in data['features'])
            return cls(features=features, threshold=float(data['threshold']))
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"invalid discretization: {e}", module='binarizer') from e


def fit_discretization(ds: RawDataset, labels: np.ndarray, threshold: float,
                       cuts: Optional[Mapping[str, Sequence[float]]] = None,
                       max_intervals: Optional[int] = None) -> Discretization:
    """
    Fit buckets for every schema feature.

    Args:
        ds: Training records
        labels: Binarized labels
        threshold: ChiMerge merge threshold (>= 0)
        cuts: Fixed cut points per continuous feature, bypassing ChiMerge
        max_intervals: Optional ChiMerge interval cap

    Returns:
        Fitted Discretization covering every feature's observed range
    """
    if threshold < 0:
        raise ConfigError(f"discretization threshold must be >= 0, got {threshold}", module='binarizer')
    if max_intervals is not None and max_intervals < 1:
        raise ConfigError(f"max_intervals must be >= 1, got {max_intervals}", module='binarizer')
    cuts = dict(cuts or {})
    unknown = sorted(set(cuts) - set(ds.schema.feature_names))
    if unknown:
        raise ConfigError(f"cut points given for unknown features: {unknown}", module='binarizer')

    labels = np.asarray(labels)
    fitted = []
    for spec in ds.schema.features:
        values = ds.column(spec.name)
        if spec.kind == CATEGORICAL:
            if spec.name in cuts:
                raise ConfigError(f"feature '{spec.name}' is categorical and takes no cut points",
                                  module='binarizer')
            categories = tuple(sorted({str(v) for v in values}))
            fitted.append(FeatureBins(name=spec.name, kind=CATEGORICAL, categories=categories))
            continue

        values = np.asarray(values, dtype=float)
        observed_lo = float(values.min()) if len(values) else 0.0
        observed_hi = float(values.max()) if len(values) else 0.0
        lo, hi = spec.domain if spec.domain is not None else (observed_lo, observed_hi)
        lo, hi = min(lo, observed_lo), max(hi, observed_hi)

        if spec.name in cuts:
            feature_cuts = sorted(float(c) for c in cuts[spec.name])
            if len(set(feature_cuts)) != len(feature_cuts) or any(not lo < c <= hi for c in feature_cuts):
                raise ConfigError(
                    f"cut points for '{spec.name}' must be distinct and inside ({lo:g}, {hi:g}]",
                    module='binarizer')
        else:
            feature_cuts = chimerge(values, labels, threshold, max_intervals) if len(values) else []
        fitted.append(FeatureBins(name=spec.name, kind=CONTINUOUS, cuts=tuple(feature_cuts), lo=lo, hi=hi))
        logger.debug(f"Feature '{spec.name}': {len(feature_cuts) + 1} intervals, cuts {feature_cuts}")

    disc = Discretization(features=tuple(fitted), threshold=float(threshold))
    logger.info(f"Fitted discretization: {sum(disc.widths)} buckets over {len(fitted)} features")
    return disc

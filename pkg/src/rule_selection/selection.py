"""
Rule Selection

Turns the merged candidate set into the final boundary: an optional top-K
pre-filter by exclusiveness and local support, then greedy weighted set
cover. The weight of a candidate at each step is

    alpha * (uncovered positive rows it covers) / |D+|
      - (1 - alpha) * (uncovered negative rows it covers) / |D-|

Every row covered by a selected candidate, positive or negative, leaves the
uncovered pool.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from binarizer import BinarizedDataset
from boundary_synthesis import BoundarySet
from lattice import BitVector, to_matrix
from shared.config import DEFAULT_ALPHA, DEFAULT_MIN_WEIGHT, DEFAULT_TOP_K
from shared.errors import ConfigError

from .stats import CandidateStats, compute_stats, cover_rows

logger = logging.getLogger(__name__)

Trace = Callable[..., None]

STOP_COVERED = 'covered'
STOP_EXHAUSTED = 'exhausted'
STOP_MAX_RULES = 'max_rules'
STOP_MIN_WEIGHT = 'min_weight'
STOP_NO_GAIN = 'no_gain'


@dataclass(frozen=True)
class SelectionConfig:
    """Selection settings. `top_k`, `max_rules` and `min_weight` are disabled by None."""

    alpha: float = DEFAULT_ALPHA
    top_k: Optional[int] = DEFAULT_TOP_K
    max_rules: Optional[int] = None
    min_weight: Optional[float] = DEFAULT_MIN_WEIGHT
    min_local_support: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha must be in [0, 1], got {self.alpha}", module='rule_selection')
        if self.top_k is not None and self.top_k < 1:
            raise ConfigError(f"top_k must be >= 1, got {self.top_k}", module='rule_selection')
        if self.max_rules is not None and self.max_rules < 1:
            raise ConfigError(f"max_rules must be >= 1, got {self.max_rules}", module='rule_selection')
        if not 0.0 <= self.min_local_support <= 1.0:
            raise ConfigError(f"min_local_support must be in [0, 1], got {self.min_local_support}",
                              module='rule_selection')


@dataclass(frozen=True)
class SelectedRule:
    """A candidate picked by the set cover, with its marginal gains at pick time."""

    point: BitVector
    weight: float
    new_positives: int
    new_negatives: int
    sources: tuple = ()


@dataclass
class SelectionResult:
    selected: List[SelectedRule] = field(default_factory=list)
    n_candidates: int = 0
    n_filtered: int = 0
    stop_reason: str = STOP_EXHAUSTED
    duration_s: float = 0.0

    @property
    def points(self) -> List[BitVector]:
        return [rule.point for rule in self.selected]


def _rank_key(stats: CandidateStats, position: int) -> tuple:
    return (-stats.exclusiveness, -stats.local_support, -stats.zeros, position)


def filter_top_k(candidates: BoundarySet, bds: BinarizedDataset, k: int,
                 min_local_support: float = 0.0,
                 stats: Optional[Sequence[CandidateStats]] = None) -> BoundarySet:
    """
    Keep the K best candidates by (exclusiveness, local support, zeros).

    Survivors keep their original relative order and provenance, so K >= |A|
    returns the candidates unchanged.

    Args:
        candidates: Merged candidate set
        bds: Full training set
        k: Number of candidates to keep (>= 1)
        min_local_support: Candidates below this local support are dropped first
        stats: Precomputed statistics in candidate order

    Returns:
        Filtered BoundarySet
    """
    if k < 1:
        raise ConfigError(f"top_k must be >= 1, got {k}", module='rule_selection')
    points = list(candidates)
    if stats is None:
        stats = compute_stats(points, bds)

    eligible = [i for i, s in enumerate(stats) if s.local_support >= min_local_support]
    if len(eligible) < len(points):
        logger.info(f"Dropped {len(points) - len(eligible)} candidates below local support {min_local_support:g}")
    ranked = sorted(eligible, key=lambda i: _rank_key(stats[i], i))
    keep = sorted(ranked[:k])

    filtered = BoundarySet(width=candidates.width)
    for i in keep:
        point = points[i]
        filtered.add(point)
        for source in candidates.sources(point):
            filtered.add(point, source)
    logger.debug(f"Top-{k} filter kept {len(filtered)} of {len(points)} candidates")
    return filtered


def weighted_set_cover(candidates: BoundarySet, bds: BinarizedDataset, cfg: SelectionConfig,
                       trace: Optional[Trace] = None) -> SelectionResult:
    """
    Greedy weighted set cover over the candidates.

    Each step picks the highest weight; ties go to the candidate with most
    zeros, then to the earlier candidate. Stops when every positive row is
    covered, the candidates run out, `max_rules` is reached, the best weight
    falls below `min_weight`, or the best candidate covers no new positive.

    Returns:
        SelectionResult with the picked rules in selection order
    """
    points = list(candidates)
    result = SelectionResult(n_candidates=len(points), n_filtered=len(points))
    if not points:
        logger.warning("No candidates to select from; the model is empty")
        result.stop_reason = STOP_EXHAUSTED
        return result

    matrix = to_matrix(points, bds.d)
    plus_cover = cover_rows(matrix, bds.plus_matrix())
    minus_cover = cover_rows(matrix, bds.minus_matrix())
    plus_counts = np.asarray(bds.plus_counts, dtype=np.int64)
    minus_counts = np.asarray(bds.minus_counts, dtype=np.int64)
    n_plus, n_minus = int(plus_counts.sum()), int(minus_counts.sum())
    zeros = np.array([p.zeros for p in points], dtype=np.int64)

    plus_left = np.ones(len(plus_counts), dtype=bool)
    minus_left = np.ones(len(minus_counts), dtype=bool)
    available = np.ones(len(points), dtype=bool)

    while True:
        uncovered_pos = int(plus_counts[plus_left].sum())
        if uncovered_pos == 0:
            result.stop_reason = STOP_COVERED
            break
        if not available.any():
            result.stop_reason = STOP_EXHAUSTED
            break
        if cfg.max_rules is not None and len(result.selected) >= cfg.max_rules:
            result.stop_reason = STOP_MAX_RULES
            break

        gain_pos = plus_cover[:, plus_left] @ plus_counts[plus_left]
        gain_neg = minus_cover[:, minus_left] @ minus_counts[minus_left]
        weight = cfg.alpha * gain_pos / n_plus
        if n_minus:
            weight = weight - (1.0 - cfg.alpha) * gain_neg / n_minus

        # lexsort: last key is primary
        order = np.lexsort((np.arange(len(points)), -zeros, -weight))
        best = int(next(i for i in order if available[i]))
        best_weight = float(weight[best])

        if cfg.min_weight is not None and best_weight < cfg.min_weight:
            result.stop_reason = STOP_MIN_WEIGHT
            break
        if gain_pos[best] == 0:
            result.stop_reason = STOP_NO_GAIN
            break

        rule = SelectedRule(point=points[best], weight=best_weight, new_positives=int(gain_pos[best]),
                            new_negatives=int(gain_neg[best]), sources=tuple(candidates.sources(points[best])))
        result.selected.append(rule)
        available[best] = False
        plus_left &= ~plus_cover[best]
        minus_left &= ~minus_cover[best]
        if trace:
            trace('select', iter=len(result.selected), a=str(rule.point), weight=best_weight,
                  pos=rule.new_positives, neg=rule.new_negatives,
                  left_pos=int(plus_counts[plus_left].sum()), left_neg=int(minus_counts[minus_left].sum()))

    if trace:
        trace('stop', reason=result.stop_reason, rules=len(result.selected))
    logger.debug(f"Set cover picked {len(result.selected)} of {len(points)} candidates "
                 f"(stop: {result.stop_reason})")
    return result


def select_rules(candidates: BoundarySet, bds: BinarizedDataset, cfg: SelectionConfig,
                 trace: Optional[Trace] = None, n_jobs: int = 1) -> SelectionResult:
    """Top-K filter (when configured) followed by weighted set cover."""
    start = time.perf_counter()
    n_candidates = len(candidates)
    if n_candidates and (cfg.top_k is not None or cfg.min_local_support > 0):
        stats = compute_stats(list(candidates), bds, n_jobs=n_jobs)
        k = cfg.top_k if cfg.top_k is not None else n_candidates
        candidates = filter_top_k(candidates, bds, k, cfg.min_local_support, stats=stats)

    result = weighted_set_cover(candidates, bds, cfg, trace)
    result.n_candidates = n_candidates
    result.n_filtered = len(candidates)
    result.duration_s = time.perf_counter() - start
    logger.info(f"Selected {len(result.selected)} rules from {n_candidates} candidates "
                f"({len(candidates)} after filtering, stop: {result.stop_reason})",
                extra={'n_candidates': n_candidates, 'n_rules': len(result.selected),
                       'duration_ms': round(result.duration_s * 1000, 2)})
    return result

"""
Greedy Boundary Learner

Builds a boundary set sample by sample. For each still-uncovered positive x,
bits of x are flipped off one at a time, best candidate first, and a bit is
frozen as soon as flipping it would make the point fall below a negative
sample. The frozen bits form the boundary point, which covers x and every
other positive above it.

Per-negative distances to the current point are maintained incrementally:
clearing bit b lowers the distance of exactly those negatives with a 0 at b.
"""

import logging
import math
from typing import Callable, List, NamedTuple, Optional, Sequence

import numpy as np

from lattice import BitVector, to_matrix
from shared.errors import RulesError

from .boundary import DATASET_ORDER, H1, SKIP_COLLISIONS, BoundarySet, LearnerConfig

logger = logging.getLogger(__name__)

Trace = Callable[..., None]

# Stands in for an absent distance inside integer arrays
_NO_NEGATIVE = np.iinfo(np.int64).max


class IndexStats(NamedTuple):
    """Ranking statistics of one flippable bit."""

    s_zero: int
    dplus_zero: int
    distance: Optional[int]


def heuristic_key(stats: IndexStats, heuristic: str) -> tuple:
    """Sort key of a bit; an absent distance ranks above every finite one."""
    distance = math.inf if stats.distance is None else stats.distance
    if heuristic == H1:
        return (stats.s_zero, stats.dplus_zero, distance)
    return (distance, stats.s_zero, stats.dplus_zero)


def select_best_index(flippable: Sequence[int], stats: dict, heuristic: str) -> int:
    """
    Choose the next bit to flip off.

    Args:
        flippable: Candidate indices, any order
        stats: IndexStats per candidate index
        heuristic: H1 or H2

    Returns:
        Index with the lexicographically largest heuristic tuple; ties go to
        the smallest index
    """
    best, best_key = None, None
    for index in sorted(flippable):
        key = heuristic_key(stats[index], heuristic)
        if best_key is None or key > best_key:
            best, best_key = index, key
    return best


class SearchState:
    """Search state for one positive sample.

    Holds the flippable set I, the frozen set J, the current point p(I u J)
    and the distance from that point to every negative sample.
    """

    def __init__(self, x: np.ndarray, minus: np.ndarray, s_zero: np.ndarray, dplus_zero: np.ndarray):
        self.current = x.copy()
        self.minus_zero = ~minus
        self.s_zero = s_zero
        self.dplus_zero = dplus_zero
        self.flippable: List[int] = [int(i) for i in np.flatnonzero(x)]
        self.frozen: List[int] = []
        self.neg_distance = (self.current & self.minus_zero).sum(axis=1).astype(np.int64)
        self.index_distance = self._index_distances()

    def _index_distances(self) -> np.ndarray:
        if self.minus_zero.shape[0] == 0:
            return np.full(self.current.shape[0], _NO_NEGATIVE, dtype=np.int64)
        masked = np.where(self.minus_zero, self.neg_distance[:, None], _NO_NEGATIVE)
        return masked.min(axis=0)

    def distance(self, index: int) -> Optional[int]:
        """Distance from the current point to the negatives with a 0 at `index`."""
        value = int(self.index_distance[index])
        return None if value == _NO_NEGATIVE else value

    def stats(self, index: int) -> IndexStats:
        return IndexStats(int(self.s_zero[index]), int(self.dplus_zero[index]), self.distance(index))

    def freeze_conflicting(self) -> List[int]:
        """Move every bit whose flip would cause a conflict from I to J."""
        frozen = [i for i in self.flippable if self.index_distance[i] == 1]
        if frozen:
            self.flippable = [i for i in self.flippable if self.index_distance[i] != 1]
            self.frozen.extend(frozen)
        return frozen

    def update_distances(self, flipped: int) -> None:
        """Clear bit `flipped` and refresh the distances incrementally."""
        self.flippable.remove(flipped)
        self.current[flipped] = False
        self.neg_distance[self.minus_zero[:, flipped]] -= 1
        self.index_distance = self._index_distances()

    def recomputed_distances(self) -> np.ndarray:
        """From-scratch counterpart of the incremental per-negative distances."""
        return (self.current & self.minus_zero).sum(axis=1).astype(np.int64)

    def point(self, width: int) -> BitVector:
        return BitVector.from_indices(self.frozen, width)


def below_any(rows: np.ndarray, others: np.ndarray, budget: int = 20_000_000) -> np.ndarray:
    """For each row, whether it lies below (or equals) at least one of `others`."""
    result = np.zeros(rows.shape[0], dtype=bool)
    if rows.shape[0] == 0 or others.shape[0] == 0:
        return result
    missing = ~others
    chunk = max(1, budget // max(1, others.shape[0] * others.shape[1]))
    for start in range(0, rows.shape[0], chunk):
        block = rows[start:start + chunk]
        result[start:start + chunk] = (~(block[:, None, :] & missing[None, :, :]).any(axis=2)).any(axis=1)
    return result


def _fmt(vector: np.ndarray) -> str:
    return ''.join('1' if bit else '0' for bit in vector)


def find_boundary_point(state: SearchState, cfg: LearnerConfig, width: int,
                        trace: Optional[Trace] = None) -> BitVector:
    """
    Flip off the bits of one positive sample until every remaining bit is frozen.

    Args:
        state: Fresh search state for the sample
        cfg: Learner settings
        width: Lattice width
        trace: Optional trace sink

    Returns:
        The point p(J) built from the frozen bits
    """
    if trace:
        for index in state.flippable:
            stats = state.stats(index)
            trace('stat', i=index, s0=stats.s_zero, dplus0=stats.dplus_zero, dist=stats.distance)

    while state.flippable:
        for index in state.freeze_conflicting():
            if trace:
                trace('freeze', i=index)
        if not state.flippable:
            break
        stats = {i: state.stats(i) for i in state.flippable}
        best = select_best_index(state.flippable, stats, cfg.heuristic)
        if trace:
            trace('flip', i=best)
        state.update_distances(best)
        if cfg.debug_checks and not np.array_equal(state.neg_distance, state.recomputed_distances()):
            raise RulesError(f"incremental distances diverged after flipping bit {best}",
                             module='boundary_synthesis')
    return state.point(width)


def find_boundary(d_plus: Sequence[BitVector], d_minus: Sequence[BitVector], cfg: LearnerConfig,
                  width: Optional[int] = None, trace: Optional[Trace] = None) -> BoundarySet:
    """
    Learn a boundary set separating the positives from the negatives.

    Positives that sit below (or equal) a negative can never be covered without
    a conflict. They are listed in `unresolvable` and, under the default
    `skip` policy, left out of the search.

    Args:
        d_plus: Distinct positive vectors
        d_minus: Distinct negative vectors
        cfg: Learner settings
        width: Lattice width, required when both sets are empty
        trace: Optional callable receiving trace events

    Returns:
        BoundarySet whose points cover every resolvable positive and no negative
    """
    if width is None:
        if not d_plus and not d_minus:
            raise RulesError("width is required for empty inputs", module='boundary_synthesis')
        width = (d_plus or d_minus)[0].width

    boundary = BoundarySet(width=width)
    if not d_plus:
        logger.warning("No positive samples; the boundary set is empty")
        return boundary

    plus = to_matrix(d_plus, width)
    minus = to_matrix(d_minus, width)
    dplus_zero = (~plus).sum(axis=0)

    unresolvable = below_any(plus, minus)

    alive = ~unresolvable if cfg.collisions == SKIP_COLLISIONS else np.ones(len(d_plus), dtype=bool)
    for j in np.flatnonzero(unresolvable):
        boundary.unresolvable.append(d_plus[j])
        logger.debug(f"Positive sample {d_plus[j]} lies below a negative sample")
        if trace:
            trace('unresolvable', x=str(d_plus[j]))
    if boundary.unresolvable:
        logger.warning(f"{len(boundary.unresolvable)} positive samples lie below a negative sample "
                       f"(policy '{cfg.collisions}')")

    order = np.arange(len(d_plus))
    if cfg.sample_order != DATASET_ORDER:
        order = np.random.default_rng(cfg.seed).permutation(len(d_plus))

    for j in order:
        if not alive[j]:
            continue
        x = plus[j]
        s_zero = (~plus[alive]).sum(axis=0)
        state = SearchState(x, minus, s_zero, dplus_zero)
        if trace:
            trace('sample', x=_fmt(x), I=state.flippable)

        point = find_boundary_point(state, cfg, width, trace)
        dominated = any(a.bits & point.bits == a.bits for a in boundary.points)
        if not dominated:
            boundary.add(point)
        if trace:
            trace('point', a=str(point), J=sorted(state.frozen), added=str(not dominated).lower())

        point_row = point.to_array()
        covered = ~(point_row[None, :] & ~plus).any(axis=1)
        alive &= ~covered

    logger.debug(f"Boundary learner produced {len(boundary)} points from {len(d_plus)} positives "
                 f"and {len(d_minus)} negatives (width {width})")
    return boundary

"""
Coverage statistics of candidate points against the full training set.

Counts are taken over rows, so a distinct vector contributes its
multiplicity. The cover test a <= x is evaluated in blocks as a matrix
product: a covers x exactly when a has no set bit where x has a 0.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence

import numpy as np
from joblib import Parallel, delayed, effective_n_jobs

from binarizer import BinarizedDataset
from lattice import BitVector, to_matrix
from shared.errors import LatticeError

logger = logging.getLogger(__name__)

# Upper bound on the cells of one cover block
_BLOCK_CELLS = 8_000_000


@dataclass(frozen=True)
class CandidateStats:
    """Coverage of one candidate; `positives` and `negatives` count rows."""

    point: BitVector
    positives: int
    negatives: int
    zeros: int
    n_positive_rows: int

    @property
    def exclusiveness(self) -> float:
        covered = self.positives + self.negatives
        return 1.0 if covered == 0 else self.positives / covered

    @property
    def local_support(self) -> float:
        return self.positives / self.n_positive_rows if self.n_positive_rows else 0.0

    def to_dict(self) -> Dict:
        return {
            'positives': self.positives,
            'negatives': self.negatives,
            'zeros': self.zeros,
            'exclusiveness': round(self.exclusiveness, 6),
            'local_support': round(self.local_support, 6),
        }


def cover_rows(points: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """
    Boolean (len(points), len(matrix)) table of point <= row.

    Args:
        points: (c, d) boolean matrix of candidate points
        matrix: (n, d) boolean matrix of data vectors
    """
    if points.shape[1] != matrix.shape[1]:
        raise LatticeError(f"width mismatch: {points.shape[1]} vs {matrix.shape[1]}", module='rule_selection')
    result = np.zeros((points.shape[0], matrix.shape[0]), dtype=bool)
    if points.shape[0] == 0 or matrix.shape[0] == 0:
        return result
    set_bits = points.astype(np.float32)
    missing = (~matrix).astype(np.float32).T
    block = max(1, _BLOCK_CELLS // matrix.shape[0])
    for start in range(0, points.shape[0], block):
        result[start:start + block] = (set_bits[start:start + block] @ missing) == 0
    return result


def _block_counts(points: np.ndarray, plus: np.ndarray, plus_counts: np.ndarray,
                  minus: np.ndarray, minus_counts: np.ndarray):
    return cover_rows(points, plus) @ plus_counts, cover_rows(points, minus) @ minus_counts


def compute_stats(candidates: Sequence[BitVector], bds: BinarizedDataset, n_jobs: int = 1) -> List[CandidateStats]:
    """
    Positive and negative row coverage of every candidate.

    Args:
        candidates: Points over the full width of `bds`
        bds: Training set the candidates are scored against
        n_jobs: joblib worker count for the candidate blocks

    Returns:
        One CandidateStats per candidate, in input order
    """
    candidates = list(candidates)
    if not candidates:
        return []
    for point in candidates:
        if point.width != bds.d:
            raise LatticeError(f"candidate width {point.width} does not match data width {bds.d}",
                               module='rule_selection')

    points = to_matrix(candidates, bds.d)
    plus, minus = bds.plus_matrix(), bds.minus_matrix()
    plus_counts = np.asarray(bds.plus_counts, dtype=np.int64)
    minus_counts = np.asarray(bds.minus_counts, dtype=np.int64)

    block = -(-len(candidates) // effective_n_jobs(n_jobs))
    parts = Parallel(n_jobs=n_jobs)(
        delayed(_block_counts)(points[start:start + block], plus, plus_counts, minus, minus_counts)
        for start in range(0, len(candidates), block)
    )
    positives = np.concatenate([p for p, _ in parts])
    negatives = np.concatenate([n for _, n in parts])

    n_positive_rows = bds.n_positive_rows
    return [
        CandidateStats(point=point, positives=int(p), negatives=int(n), zeros=point.zeros,
                       n_positive_rows=n_positive_rows)
        for point, p, n in zip(candidates, positives, negatives)
    ]

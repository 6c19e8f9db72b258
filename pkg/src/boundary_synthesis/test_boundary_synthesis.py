"""
Tests for the greedy boundary learner and the exhaustive boundary oracle.

Trace indices are 0-based: bit 0 is the leftmost character of a bit string.
"""
import logging

import numpy as np
import pytest

from boundary_synthesis import (
    COVER_COLLISIONS,
    H1,
    H2,
    SEEDED_SHUFFLE,
    BoundarySet,
    IndexStats,
    LearnerConfig,
    SearchState,
    enumerate_boundary,
    find_boundary,
    find_boundary_point,
    is_boundary_point,
    select_best_index,
)
from lattice import BitVector, leq, to_matrix
from shared.errors import ConfigError, LatticeError
from shared.observability import TraceWriter

logger = logging.getLogger(__name__)

ORACLE_INSTANCES = 1000


def bvs(*texts):
    return [BitVector.from_string(t) for t in texts]


def strings(boundary):
    return [str(p) for p in boundary]


def test_single_sample_trace():
    """Two bits freeze on contact with a negative, the last one flips."""
    trace = TraceWriter.in_memory()
    boundary = find_boundary(bvs("11001"), bvs("01101", "10101"), LearnerConfig(), trace=trace)
    assert strings(boundary) == ["11000"]
    assert trace.lines == [
        "sample x=11001 I={0,1,4}",
        "stat i=0 s0=0 dplus0=0 dist=1",
        "stat i=1 s0=0 dplus0=0 dist=1",
        "stat i=4 s0=0 dplus0=0 dist=undef",
        "freeze i=0",
        "freeze i=1",
        "flip i=4",
        "point a=11000 J={0,1} added=true",
    ]


def test_statistics_trace_with_h1():
    trace = TraceWriter.in_memory()
    d_plus = bvs("10101", "01101", "01110")
    d_minus = bvs("10110", "11010")
    boundary = find_boundary(d_plus, d_minus, LearnerConfig(heuristic=H1), trace=trace)
    assert trace.lines[:8] == [
        "sample x=10101 I={0,2,4}",
        "stat i=0 s0=2 dplus0=2 dist=undef",
        "stat i=2 s0=0 dplus0=0 dist=2",
        "stat i=4 s0=1 dplus0=1 dist=1",
        "freeze i=4",
        "flip i=0",
        "flip i=2",
        "point a=00001 J={4} added=true",
    ]
    assert trace.lines[8:] == [
        "sample x=01110 I={1,2,3}",
        "stat i=1 s0=0 dplus0=1 dist=1",
        "stat i=2 s0=0 dplus0=0 dist=1",
        "stat i=3 s0=0 dplus0=2 dist=undef",
        "freeze i=1",
        "freeze i=2",
        "flip i=3",
        "point a=01100 J={1,2} added=true",
    ]
    assert strings(boundary) == ["00001", "01100"]


def test_failures_boundary():
    d_plus = bvs("11001", "10110")
    d_minus = bvs("01101", "01110", "10101")
    boundary = find_boundary(d_plus, d_minus, LearnerConfig())
    assert strings(boundary) == ["11000", "10010"]
    oracle = enumerate_boundary(d_plus, d_minus)
    assert boundary.as_set() <= oracle.as_set()


def test_no_negatives_gives_bottom():
    boundary = find_boundary(bvs("1101", "0111"), [], LearnerConfig())
    assert strings(boundary) == ["0000"]
    assert strings(enumerate_boundary(bvs("1101"), [], width=4)) == ["0000"]


def test_empty_sample_returns_bottom():
    boundary = find_boundary(bvs("000"), [], LearnerConfig())
    assert strings(boundary) == ["000"]
    state = SearchState(np.zeros(3, dtype=bool), np.zeros((0, 3), dtype=bool),
                        np.zeros(3, dtype=int), np.zeros(3, dtype=int))
    assert find_boundary_point(state, LearnerConfig(), 3) == BitVector(0, 3)


def test_all_zero_positive_below_negative_is_unresolvable():
    boundary = find_boundary(bvs("000"), bvs("110"), LearnerConfig())
    assert strings(boundary.unresolvable) == ["000"]


def test_unresolvable_positive_is_skipped():
    trace = TraceWriter.in_memory()
    boundary = find_boundary(bvs("101", "011"), bvs("101", "111"), LearnerConfig(), trace=trace)
    assert strings(boundary.unresolvable) == ["101", "011"]
    assert len(boundary) == 0
    assert trace.lines[0] == "unresolvable x=101"


def test_no_positives():
    boundary = find_boundary([], bvs("101"), LearnerConfig())
    assert len(boundary) == 0
    assert boundary.width == 3


def test_select_best_index():
    stats = {0: IndexStats(2, 2, None), 2: IndexStats(0, 0, 2)}
    assert select_best_index([0, 2], stats, H1) == 0
    assert select_best_index([2], stats, H1) == 2
    tied = {3: IndexStats(1, 1, 4), 1: IndexStats(1, 1, 4)}
    assert select_best_index([3, 1], tied, H1) == 1
    assert select_best_index([3, 1], tied, H2) == 1


def test_absent_distance_ranks_first_under_h2():
    stats = {0: IndexStats(5, 5, 3), 1: IndexStats(0, 0, None)}
    assert select_best_index([0, 1], stats, H2) == 1
    assert select_best_index([0, 1], stats, H1) == 0


def test_distance_update_without_affected_negatives():
    x = np.array([True, True, False])
    minus = np.array([[True, False, True]])
    state = SearchState(x, minus, np.zeros(3, dtype=int), np.zeros(3, dtype=int))
    before = state.neg_distance.copy()
    state.update_distances(0)
    assert state.neg_distance.tolist() == before.tolist()
    assert state.recomputed_distances().tolist() == before.tolist()


def test_distance_update_continues_statistics_example():
    d_plus = to_matrix(bvs("10101", "01101", "01110"), 5)
    minus = to_matrix(bvs("10110", "11010"), 5)
    zeros = (~d_plus).sum(axis=0)
    state = SearchState(d_plus[0], minus, zeros, zeros)
    assert state.freeze_conflicting() == [4]
    state.update_distances(0)
    assert state.distance(2) == 2
    state.update_distances(2)
    assert state.neg_distance.tolist() == [1, 1]
    assert state.point(5) == BitVector.from_string("00001")


def random_instance(rng, max_n=12, max_d=14):
    width = int(rng.integers(2, max_d + 1))
    n_plus = int(rng.integers(1, max_n + 1))
    n_minus = int(rng.integers(0, max_n + 1))
    density = float(rng.uniform(0.3, 0.8))

    def draw(count):
        vectors = {}
        for _ in range(count):
            row = rng.random(width) < density
            vectors[BitVector.from_array(row)] = None
        return list(vectors)

    return draw(n_plus), draw(n_minus), width


def check_learner_output(boundary, d_plus, d_minus):
    unresolvable = set(boundary.unresolvable)
    for a in boundary:
        # sound: no negative above a point
        assert not any(leq(a, y) for y in d_minus)
    for x in d_plus:
        if x not in unresolvable:
            assert any(leq(a, x) for a in boundary)
    for a in boundary:
        for b in boundary:
            if a != b:
                assert not leq(a, b)


def test_learner_points_belong_to_exhaustive_boundary():
    """Randomized comparison against full enumeration, both heuristics."""
    rng = np.random.default_rng(1234)
    violations = 0
    for case in range(ORACLE_INSTANCES):
        d_plus, d_minus, width = random_instance(rng)
        cfg = LearnerConfig(heuristic=H1 if case % 2 == 0 else H2)
        boundary = find_boundary(d_plus, d_minus, cfg, width=width)
        oracle = enumerate_boundary(d_plus, d_minus, width=width)
        violations += len(boundary.as_set() - oracle.as_set())
        check_learner_output(boundary, d_plus, d_minus)
        for a in boundary:
            assert is_boundary_point(a, d_plus, d_minus)
    assert violations == 0
    logger.info(f"checked {ORACLE_INSTANCES} oracle instances")


def test_incremental_distances_match_recomputation():
    rng = np.random.default_rng(99)
    for case in range(500):
        d_plus, d_minus, width = random_instance(rng, max_n=10, max_d=16)
        cfg = LearnerConfig(heuristic=H1 if case % 2 else H2, debug_checks=True)
        find_boundary(d_plus, d_minus, cfg, width=width)


def test_seeded_shuffle_is_deterministic():
    rng = np.random.default_rng(5)
    d_plus, d_minus, width = random_instance(rng, max_n=12, max_d=12)
    cfg = LearnerConfig(sample_order=SEEDED_SHUFFLE, seed=17)
    first = find_boundary(d_plus, d_minus, cfg, width=width)
    second = find_boundary(d_plus, d_minus, cfg, width=width)
    assert strings(first) == strings(second)
    check_learner_output(first, d_plus, d_minus)


def test_oracle_hand_instance():
    assert strings(enumerate_boundary(bvs("11"), bvs("10"))) == ["01"]
    assert strings(find_boundary(bvs("11"), bvs("10"), LearnerConfig())) == ["01"]


def test_oracle_width_cap():
    with pytest.raises(LatticeError):
        enumerate_boundary([BitVector(0, 21)], [], cap=20)


def test_learner_config_validation():
    with pytest.raises(ConfigError):
        LearnerConfig(heuristic="H3")
    with pytest.raises(ConfigError):
        LearnerConfig(sample_order="random")


def test_boundary_set_merges_duplicates():
    boundary = BoundarySet(width=3)
    assert boundary.add(BitVector.from_string("101"))
    assert not boundary.add(BitVector.from_string("101"))
    assert len(boundary) == 1
    with pytest.raises(LatticeError):
        boundary.add(BitVector.from_string("1010"))


def test_cover_policy_learns_colliding_positive():
    d_plus, d_minus = bvs("011", "110"), bvs("011", "101")
    skipped = find_boundary(d_plus, d_minus, LearnerConfig())
    assert strings(skipped.unresolvable) == ["011"]
    assert not any(leq(a, BitVector.from_string("011")) for a in skipped)

    covered = find_boundary(d_plus, d_minus, LearnerConfig(collisions=COVER_COLLISIONS))
    assert strings(covered.unresolvable) == ["011"]
    assert any(leq(a, BitVector.from_string("011")) for a in covered)
    with pytest.raises(ConfigError):
        LearnerConfig(collisions="drop")

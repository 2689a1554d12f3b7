"""Fiber random walk: conservation, determinism, ergodicity."""

import pytest

from markov_atlas import (Graph, TableVector, cycle_graph, extract_moves,
                          fiber_of, graph_marginals, random_walk,
                          walk_states)
from markov_atlas.errors import NotKernelMove
from markov_atlas.sampler import RNG_ALGORITHM, WalkConfig, visit_counts


def c4_setup(total_units):
    g = cycle_graph("abcd")
    z0 = TableVector.from_units(g.vertices, total_units)
    fib = fiber_of(g, z0)
    moves = extract_moves(fib, 4)
    return g, z0, fib, moves


def test_empty_move_list_is_identity():
    g, z0, _, _ = c4_setup([0b0000, 0b1111])
    res = random_walk(g, [], z0, WalkConfig(steps=50, seed=1))
    assert res.state == z0
    assert res.proposed == 0


def test_singleton_fiber_never_moves():
    g = Graph(("a", "b"), [(0, 1)])
    z0 = TableVector.from_units(g.vertices, [0b01, 0b10])
    fib = fiber_of(g, z0)
    assert fib.size == 1
    moves = extract_moves(fib, 4)
    res = random_walk(g, moves, z0, WalkConfig(steps=100, seed=2))
    assert res.state == z0


def test_nonkernel_move_rejected_at_load():
    g, z0, _, _ = c4_setup([0b0000])
    bad = TableVector.from_units(g.vertices, [0b0001]) - \
        TableVector.from_units(g.vertices, [0b0010])
    with pytest.raises(NotKernelMove):
        random_walk(g, [bad], z0, WalkConfig(steps=1, seed=0))


def test_marginals_conserved_along_trajectory():
    g, z0, _, moves = c4_setup([0b0101, 0b0101, 0b1111, 0b1111])
    ref = graph_marginals(z0, g)
    for state in walk_states(g, moves, z0, WalkConfig(steps=500, seed=5)):
        assert state.is_nonnegative()
        assert graph_marginals(state, g) == ref


def test_determinism_under_seed():
    g, z0, _, moves = c4_setup([0b0101, 0b0101, 0b1111, 0b1111])
    cfg = WalkConfig(steps=400, burn_in=50, seed=99)
    t1 = list(walk_states(g, moves, z0, cfg))
    t2 = list(walk_states(g, moves, z0, cfg))
    assert t1 == t2
    t3 = list(walk_states(g, moves, z0, WalkConfig(steps=400, burn_in=50,
                                                   seed=100)))
    assert t1 != t3


def test_walk_reaches_whole_fiber():
    g, z0, fib, moves = c4_setup([0b0101, 0b0101, 0b1111, 0b1111])
    counts = visit_counts(g, moves, z0, WalkConfig(steps=20000, seed=11))
    assert len(counts) == fib.size


def test_result_metadata():
    g, z0, _, moves = c4_setup([0b0101, 0b0101, 0b1111, 0b1111])
    res = random_walk(g, moves, z0, WalkConfig(steps=200, burn_in=10,
                                               seed=3))
    meta = res.metadata()
    assert meta["rng"] == RNG_ALGORITHM == "mt19937"
    assert meta["seed"] == 3
    assert meta["proposed"] == 210
    assert 0.0 <= meta["acceptance_rate"] <= 1.0


def test_config_validation():
    with pytest.raises(ValueError):
        WalkConfig(steps=0)
    with pytest.raises(ValueError):
        WalkConfig(steps=1, burn_in=-1)

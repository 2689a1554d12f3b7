"""Fiber enumeration against a rejection oracle, fiber graphs, and the
minimal-connecting-degree search."""

import itertools
import os
import subprocess
import sys

import pytest

from markov_atlas import (Graph, TableVector, cycle_graph, enumerate_fiber,
                          extract_moves, fiber_components, fiber_graph,
                          fiber_of, graph_marginals, is_kernel_element,
                          min_connecting_degree, witness_disconnected_fiber)
from markov_atlas.errors import ResourceLimitError
from markov_atlas.lattice import MarginalSet
from markov_atlas.limits import Limits
from markov_atlas.fiber import _kernel, _kernel_py

from helpers import all_graphs, rejection_fiber


def tv(g, units):
    return TableVector.from_units(g.vertices, units)


# -- enumeration correctness -------------------------------------------

def test_fiber_matches_rejection_oracle():
    graphs = [
        Graph(("a", "b", "c"), [(0, 1), (1, 2)]),
        cycle_graph("abcd"),
        Graph(("a", "b", "c", "d"), [(0, 1)]),
        Graph(("a", "b"), []),
    ]
    for g in graphs:
        for units in itertools.combinations_with_replacement(
                range(1 << g.n), 3):
            z = tv(g, units)
            fib = fiber_of(g, z)
            assert sorted(e.key() for e in fib.elements) == \
                sorted(e.key() for e in rejection_fiber(g, z))
            break  # one fiber per graph is enough here


def test_fiber_oracle_sweep_small():
    """Every fiber of every graph on 3 vertices, totals <= 3."""
    for g in all_graphs(3):
        for total in (1, 2, 3):
            seen = set()
            for units in itertools.combinations_with_replacement(
                    range(1 << g.n), total):
                z = tv(g, units)
                key = graph_marginals(z, g).key()
                if key in seen:
                    continue
                seen.add(key)
                fib = fiber_of(g, z)
                oracle = rejection_fiber(g, z)
                assert sorted(e.key() for e in fib.elements) == \
                    sorted(e.key() for e in oracle)


def test_fiber_contains_its_seed():
    g = cycle_graph("abcde")
    z = tv(g, [0b00111, 0b11000, 0b00000])
    fib = fiber_of(g, z)
    assert z in fib.elements


def test_empty_graph_fiber_is_value_partition():
    g = Graph(("a", "b"), [])
    z = tv(g, [0, 0, 3])
    fib = fiber_of(g, z)
    # all tables of total 3 over 4 labelings share the (empty) marginals
    assert fib.size == len(list(
        itertools.combinations_with_replacement(range(4), 3)))


def test_inconsistent_marginals_rejected():
    g = Graph(("a", "b", "c"), [(0, 1), (1, 2)])
    bad = MarginalSet(g.vertices,
                      (((0, 1), (1, 0, 0, 0)), ((1, 2), (2, 0, 0, 0))), 1)
    with pytest.raises(Exception):
        enumerate_fiber(g, bad)


def test_fiber_cap_raises():
    g = Graph(("a", "b", "c", "d"), [])
    z = tv(g, [0] * 5)
    with pytest.raises(ResourceLimitError):
        enumerate_fiber(g, graph_marginals(z, g),
                        limits=Limits(max_fiber=10))


def test_vertex_and_total_caps():
    g = Graph(tuple("abcdefghijklmnopq"), [])
    with pytest.raises(ResourceLimitError):
        fiber_of(g, TableVector.zero(g.vertices))
    g2 = Graph(("a",), [])
    with pytest.raises(ResourceLimitError):
        fiber_of(g2, tv(g2, [0] * 9))


# -- fiber graphs and components ---------------------------------------

def test_fiber_graph_adjacency_is_symmetric_threshold():
    g = cycle_graph("abcd")
    z = tv(g, [0b0000, 0b0011, 0b1100, 0b1111])
    fib = fiber_of(g, z)
    fg = fiber_graph(fib, 2)
    for i, j in fg.adjacency:
        assert (fib.elements[i] - fib.elements[j]).l1() <= 4


def test_components_refine_with_degree():
    g = cycle_graph("abcd")
    z = tv(g, [0b0000, 0b0011, 0b1100, 0b1111])
    fib = fiber_of(g, z)
    comp2 = fiber_components(fib, 2)
    comp4 = fiber_components(fib, 4)
    assert len(comp4) <= len(comp2)
    assert sum(len(c) for c in comp4) == fib.size


def test_extract_moves_are_kernel_elements():
    g = cycle_graph("abcd")
    z = tv(g, [0b0000, 0b0011, 0b1100, 0b1111])
    fib = fiber_of(g, z)
    for mv in extract_moves(fib, 4):
        assert is_kernel_element(mv.vector, g)
        assert 1 <= mv.degree <= 4


# -- width search ------------------------------------------------------

def test_path_connects_at_degree_2():
    g = Graph(("a", "b", "c"), [(0, 1), (1, 2)])
    assert min_connecting_degree(g, 4) == 2
    assert witness_disconnected_fiber(g, 2, 4) is None


def test_c4_needs_degree_4():
    g = cycle_graph("abcd")
    assert min_connecting_degree(g, 4) == 4
    fibw = witness_disconnected_fiber(g, 3, 4)
    assert fibw is not None
    fib, (za, zb) = fibw
    assert za in fib.elements and zb in fib.elements
    assert graph_marginals(za, g) == graph_marginals(zb, g)
    labels = _kernel.component_labels(
        [tuple(e.units()) for e in fib.elements], 6)
    assert len(set(labels)) > 1


def test_min_degree_monotone_in_total():
    g = cycle_graph("abcd")
    prev = 0
    for total in range(1, 5):
        d = min_connecting_degree(g, total)
        assert d >= prev
        prev = d


# -- kernel parity -----------------------------------------------------

@pytest.mark.skipif(_kernel.KERNEL_ID == "py",
                    reason="compiled kernel unavailable")
def test_compiled_kernel_matches_pure():
    from markov_atlas.fiber import _kernel_c
    import random
    rng = random.Random(17)
    for _ in range(40):
        n = rng.randint(1, 5)
        edges = sorted(e for e in itertools.combinations(range(n), 2)
                       if rng.random() < 0.6)
        total = rng.randint(0, 4)
        gp = _kernel_py.group_tables(n, edges, total)
        gc = _kernel_c.group_tables(n, edges, total)
        assert gp == gc
        for key in sorted(gp)[:3]:
            budgets = list(key)
            fp = _kernel_py.fiber_tables(n, edges, budgets, total)
            fc = _kernel_c.fiber_tables(n, edges, budgets, total)
            assert fp == fc
            assert _kernel_py.component_labels(fp, 4) == \
                _kernel_c.component_labels(fp, 4)
            assert _kernel_py.bottleneck_norm(fp) == \
                _kernel_c.bottleneck_norm(fp)


def test_pure_kernel_env_override():
    code = ("import markov_atlas.fiber as f; print(f.KERNEL_ID)")
    env = dict(os.environ, MARKOV_ATLAS_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True)
    assert out.stdout.strip() == "py"

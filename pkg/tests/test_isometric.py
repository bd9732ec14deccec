import time

import pytest

from conftest import edge_sets, graph
from oracles import isometric_cycles
from planecycles.cycles import cycle_from_vertices
from planecycles.graph import Graph, GraphError
from planecycles.isometric import enumerate_isometric_cycles, is_isometric, isometric_listing
from reference_data import G1_CYCLES, G2_CYCLES, PETERSEN_CYCLES


def _sets(lists):
    return {frozenset(s) for s in lists}


def test_g1_listing_matches():
    assert edge_sets(enumerate_isometric_cycles(graph("g1"))) == _sets(G1_CYCLES)


def test_g2_listing_matches():
    assert edge_sets(enumerate_isometric_cycles(graph("g2"))) == _sets(G2_CYCLES)


def test_petersen_has_twelve_pentagons():
    cycles = enumerate_isometric_cycles(graph("petersen"))
    assert edge_sets(cycles) == _sets(PETERSEN_CYCLES)
    assert {c.length for c in cycles} == {5}


def test_labels_follow_length_then_edges():
    cycles = enumerate_isometric_cycles(graph("g1"))
    assert [c.label for c in cycles] == list(range(1, 17))
    keys = [(c.length, c.edge_list) for c in cycles]
    assert keys == sorted(keys)


@pytest.mark.parametrize("name", ["g1", "g2", "g3", "g4", "g5", "petersen", "dodecahedron", "g18"])
def test_matches_brute_force_on_corpus(name):
    g = graph(name)
    assert edge_sets(enumerate_isometric_cycles(g)) == {
        frozenset(e + 1 for e in c) for c in isometric_cycles(g.n, list(g.edges))
    }


def test_triangle_has_one_cycle():
    g = Graph.from_pairs([(1, 2), (2, 3), (3, 1)])
    assert len(enumerate_isometric_cycles(g)) == 1


def test_square_with_diagonal_is_not_isometric_as_a_square():
    g = Graph.from_pairs([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3)])
    square = cycle_from_vertices(g, [0, 1, 2, 3])
    assert not is_isometric(g, square)
    assert len(enumerate_isometric_cycles(g)) == 2


def test_non_simple_input_is_rejected():
    g = graph("g1")
    c = cycle_from_vertices(g, [0, 1, 2])
    broken = type(c)(c.edges, (0, 1, 1), 0)
    with pytest.raises(GraphError):
        is_isometric(g, broken)


def test_listing_format():
    g = graph("g1")
    text = isometric_listing(g, enumerate_isometric_cycles(g))
    assert text.splitlines()[0] == "Isometric cycles: 16"
    assert text.splitlines()[1] == "c1 = {e1, e2, e5} <-> {v1, v2, v3}"


def test_larger_graph_is_fast():
    g = graph("g31")
    start = time.perf_counter()
    cycles = enumerate_isometric_cycles(g)
    assert time.perf_counter() - start < 2.0
    assert len(cycles) > 0

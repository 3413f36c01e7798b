from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from swnet.graph import (Cut, DigraphInput, InvalidDimension, PathSpec, all_edges, bits_to_edges,
                         canonical_path, edge_crosses, edge_index, edges_to_bits, enumerate_cuts,
                         has_st_path, st_reachable_bits, vertex_name)


def test_edge_index_is_a_bijection():
    for n in range(2, 7):
        idx = sorted(edge_index(e, n) for e in all_edges(n))
        assert idx == list(range(n * (n - 1)))


def test_vertex_names():
    assert [vertex_name(v, 4) for v in range(4)] == ["s", "1", "2", "t"]


def test_invalid_n():
    with pytest.raises(InvalidDimension):
        enumerate_cuts(1)
    with pytest.raises(ValueError):
        DigraphInput(3, frozenset({(0, 0)}))


def test_cut_count_and_crossing():
    cuts = enumerate_cuts(4)
    assert len(cuts) == 4
    c = Cut(4, 0b01)  # {s, a}
    assert edge_crosses((1, 2), c)
    assert not edge_crosses((2, 1), c)
    assert edge_crosses((0, 3), c)


def _reach_oracle(n, edges):
    # Floyd-Warshall style, independent of the BFS under test
    r = [[i == j for j in range(n)] for i in range(n)]
    for u, v in edges:
        r[u][v] = True
    for k, i, j in itertools.product(range(n), repeat=3):
        if r[i][k] and r[k][j]:
            r[i][j] = True
    return r[0][n - 1]


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (n * (n - 1))) - 1))))
def test_reachability_agrees_with_oracle(args):
    n, bits = args
    edges = bits_to_edges(bits, n)
    g = DigraphInput(n, frozenset(edges))
    assert edges_to_bits(edges, n) == bits
    assert has_st_path(g) == _reach_oracle(n, edges) == st_reachable_bits(bits, n)


def test_digraph_json_round_trip():
    g = DigraphInput(4, frozenset({(0, 1), (1, 3)}))
    assert DigraphInput.from_json(g.to_json()) == g
    assert str(g) == "{s->1, 1->t}"


def test_paths():
    p = canonical_path(3)
    assert p.vertices == (0, 1, 2, 3, 4)
    assert p.edges[0] == (0, 1) and len(p) == 4
    assert has_st_path(p.to_digraph())
    with pytest.raises(ValueError):
        PathSpec(4, (1, 1))
    with pytest.raises(ValueError):
        PathSpec(4, (3,))

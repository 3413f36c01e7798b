from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from swnet.graph import all_edges, bits_to_edges
from swnet.kset import (KnowledgeSet, StateOfKnowledge, antichain, ck_step_valid, closure_bits,
                        sok_step_valid, transitive_closure)

N = 4
EDGES = all_edges(N)
edge_lists = st.lists(st.sampled_from(EDGES), max_size=6)


def test_complete_collapse():
    k = KnowledgeSet.of(N, [(0, 1), (1, 3)])
    assert k.is_complete
    assert k == KnowledgeSet.complete(N)
    assert k.to_json() == "COMPLETE"


def test_closure_adds_implied_edges():
    k = KnowledgeSet.of(5, [(0, 1), (1, 2)])
    assert set(k.edges) == {(0, 1), (1, 2), (0, 2)}


@given(edge_lists)
def test_closure_idempotent(es):
    k = transitive_closure(es, N)
    assert closure_bits(k.bits, N) == k.bits
    assert KnowledgeSet.of(N, k.edges) == k


@given(edge_lists, edge_lists)
def test_union_is_closed_and_monotone(a, b):
    ka, kb = KnowledgeSet.of(N, a), KnowledgeSet.of(N, b)
    u = ka | kb
    assert ka <= u and kb <= u
    assert closure_bits(u.bits, N) == u.bits


@given(edge_lists, edge_lists, st.sampled_from(EDGES))
def test_ck_step_symmetric(a, b, e):
    ka, kb = KnowledgeSet.of(N, a), KnowledgeSet.of(N, b)
    assert ck_step_valid(ka, kb, e) == ck_step_valid(kb, ka, e)


def test_ck_step_examples():
    e0 = KnowledgeSet.empty(N)
    assert ck_step_valid(e0, KnowledgeSet.of(N, [(0, 1)]), (0, 1))
    assert not ck_step_valid(e0, KnowledgeSet.of(N, [(0, 1)]), (0, 2))
    # forgetting an implied edge is allowed once the implying edge is at hand
    a = KnowledgeSet.of(N, [(0, 1), (1, 2)])
    assert ck_step_valid(a, KnowledgeSet.of(N, [(0, 1)]), (1, 2))


def test_knowledge_json_round_trip():
    k = KnowledgeSet.of(N, [(0, 1), (2, 1)])
    assert KnowledgeSet.from_json(N, k.to_json()) == k
    assert KnowledgeSet.from_json(N, "COMPLETE").is_complete


def test_state_antichain_reduction():
    a = KnowledgeSet.of(N, [(0, 1)])
    b = KnowledgeSet.of(N, [(0, 1), (0, 2)])
    j = StateOfKnowledge.of([a, b])
    assert j.members == (a,)
    assert antichain([b, a, a]) == (a,)
    with pytest.raises(ValueError):
        StateOfKnowledge(())


def test_sok_step_and_json():
    a = KnowledgeSet.of(N, [(0, 1)])
    b = KnowledgeSet.of(N, [(0, 2)])
    j0 = StateOfKnowledge.single(KnowledgeSet.empty(N))
    j1 = StateOfKnowledge.of([a, b])
    assert sok_step_valid(j0, StateOfKnowledge.single(a), (0, 1))
    assert StateOfKnowledge.from_json(N, j1.to_json()) == j1
    assert j1 <= j1 and j1.equivalent(StateOfKnowledge.of([b, a]))


@given(st.integers(0, (1 << 12) - 1))
def test_raw_bits_round_trip(bits):
    k = KnowledgeSet.from_raw_bits(N, bits)
    assert k == transitive_closure(bits_to_edges(bits, N), N)

from __future__ import annotations

import json

import pytest
from hypothesis import given, settings, strategies as st

from swnet.graph import DigraphInput, all_edges, has_st_path
from swnet.kset import KnowledgeSet, StateOfKnowledge
from swnet.network import (CapExceeded, Label, NetEdge, NonMonotone, SwitchingNetwork, canonical_states,
                           chain_network, chain_transform, evaluate, export_dot, verify_solves)


def _broken():
    # accepts s->a->t and the direct edge, misses s->b->t
    return SwitchingNetwork(4, 0, 2, (0, 1, 2), (NetEdge(0, 1, Label((0, 1))), NetEdge(1, 2, Label((1, 3))),
                                                  NetEdge(0, 2, Label((0, 3)))))


def test_chain_accepts_only_its_path():
    net = chain_network(3, [(0, 1), (1, 2)])
    assert evaluate(net, DigraphInput(3, frozenset({(0, 1), (1, 2)})))
    assert not evaluate(net, DigraphInput(3, frozenset({(0, 1)})))
    assert not evaluate(net, DigraphInput(3, frozenset({(0, 2)})))


def test_savitch_solves(savitch3, savitch4):
    r3 = verify_solves(savitch3[0])
    assert r3.solves and r3.inputs_checked == 64
    r4 = verify_solves(savitch4[0])
    assert r4.solves and r4.inputs_checked == 4096


def test_counterexample_is_smallest_missed_input():
    rep = verify_solves(_broken())
    assert not rep.solves
    assert rep.counterexample == DigraphInput(4, frozenset({(0, 2), (2, 3)}))
    assert rep.expected is True and rep.actual is False
    # the record can be fed straight back
    assert evaluate(_broken(), DigraphInput.from_json(rep.to_json()["counterexample"])) is False


def test_cap_and_monotonicity_errors():
    net = chain_network(6, [(0, 5)])
    with pytest.raises(CapExceeded):
        verify_solves(net)
    neg = SwitchingNetwork(3, 0, 1, (0, 1), (NetEdge(0, 1, Label((0, 2), negated=True)),))
    assert not neg.is_monotone
    with pytest.raises(NonMonotone):
        canonical_states(neg)
    # a negated label is satisfied by absence
    assert evaluate(neg, DigraphInput(3, frozenset()))
    assert not evaluate(neg, DigraphInput(3, frozenset({(0, 2)})))


@settings(max_examples=60)
@given(st.integers(0, 63), st.integers(0, 63))
def test_acceptance_is_monotone(savitch3, a, b):
    net = savitch3[0]
    small = DigraphInput.from_bits(3, a & b)
    big = DigraphInput.from_bits(3, a)
    if evaluate(net, small):
        assert evaluate(net, big)


def test_json_round_trip(savitch3):
    net = savitch3[0]
    again = SwitchingNetwork.from_json(json.loads(net.dumps()))
    assert again == net


def test_canonical_states_of_chain():
    net = chain_network(3, [(0, 1), (1, 2)])
    states = canonical_states(net)
    n = 3
    assert states[0] == StateOfKnowledge.single(KnowledgeSet.empty(n))
    assert states[1] == StateOfKnowledge.single(KnowledgeSet.of(n, [(0, 1)]))
    assert states[2].members[0].is_complete


def test_canonical_states_disjunction():
    # two routes to the middle vertex give a two-member state
    net = SwitchingNetwork(4, 0, 2, (0, 1, 2), (NetEdge(0, 1, Label((0, 1))), NetEdge(0, 1, Label((0, 2))),
                                               NetEdge(1, 2, Label((1, 3)))))
    assert len(canonical_states(net)[1]) == 2


def test_chain_transform_counts_and_verdicts(savitch3):
    small = SwitchingNetwork(4, 0, 2, (0, 1, 2), (NetEdge(0, 1, Label((0, 1))), NetEdge(1, 2, Label((1, 3)))))
    assert chain_transform(small).size == 9
    assert verify_solves(chain_transform(savitch3[0])).solves
    assert verify_solves(chain_transform(savitch3[0], ({0, 1}, {2}))).solves


def test_partitioned_transform_swaps_backward_labels():
    net = SwitchingNetwork(4, 0, 1, (0, 1), (NetEdge(0, 1, Label((2, 1))),))
    out = chain_transform(net, ({0, 1}, {2, 3}))
    first = {e.label.edge for e in out.edges if e.u == 0}
    assert first == {(0, 1), (2, 3)}


def test_partitioned_transform_is_sound(savitch4):
    w1, w2 = {0, 2}, {1, 3}
    out = chain_transform(savitch4[0], (w1, w2))
    for bits in range(1 << 12):
        g = DigraphInput.from_bits(4, bits)
        acc = evaluate(out, g)
        if acc:
            assert has_st_path(g)
        forward = DigraphInput(4, frozenset(e for e in g.edges if not (e[0] in w2 and e[1] in w1)))
        if has_st_path(forward):
            assert acc


def test_export_dot():
    net = SwitchingNetwork(3, 0, 1, (0, 1), (NetEdge(0, 1, Label((0, 2), negated=True)),))
    text = export_dot(net, comment="x")
    assert text.startswith("// x\ngraph G {")
    assert 'label="!(s->t)"' in text
    assert export_dot(net) == export_dot(net)


@settings(max_examples=80, deadline=None)
@given(st.integers(3, 4).flatmap(lambda n: st.tuples(st.just(n), st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4), st.sampled_from(all_edges(n))), min_size=1, max_size=9))))
def test_monotone_mode_agrees_with_exhaustive(args):
    n, raw = args
    edges = tuple(NetEdge(a, b, Label(e)) for a, b, e in raw if a != b)
    net = SwitchingNetwork(n, 0, 1, tuple(range(5)), edges)
    assert verify_solves(net).solves == verify_solves(net, mode="monotone").solves


def test_monotone_mode_on_savitch():
    from swnet.knowledge import build_savitch_network
    for n in (5, 6):
        assert verify_solves(build_savitch_network(n)[0], mode="monotone").solves
    rep = verify_solves(_broken(), mode="monotone")
    assert not rep.solves and rep.counterexample == DigraphInput(4, frozenset({(0, 2), (2, 3)}))

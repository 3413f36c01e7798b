from __future__ import annotations

import pytest

from swnet.knowledge import (CKLabeling, MissingLabel, build_savitch_network, k_set, knowledge_network,
                             savitch_knowledge_sets, subset_network, validate_certain_knowledge)
from swnet.kset import KnowledgeSet, ck_step_valid
from swnet.network import CapExceeded, Label, NetEdge, SwitchingNetwork

# (vertices, edges) recorded from the builder and cross-checked by exhaustive verification
SAVITCH_GOLDEN = {3: (3, 5), 4: (6, 31), 5: (26, 541)}


@pytest.mark.parametrize("n", sorted(SAVITCH_GOLDEN))
def test_savitch_golden_sizes(n):
    net, lab = build_savitch_network(n)
    assert (net.size, len(net.edges)) == SAVITCH_GOLDEN[n]
    assert validate_certain_knowledge(net, lab)


def test_savitch_knowledge_set_counts():
    assert len(savitch_knowledge_sets(6)) == 78
    assert len(savitch_knowledge_sets(7)) == 477


def test_savitch_sets_include_the_direct_path():
    n = 5
    sets = set(savitch_knowledge_sets(n))
    assert KnowledgeSet.empty(n) in sets
    assert KnowledgeSet.of(n, [(0, 1)]) in sets
    assert KnowledgeSet.complete(n) in sets


def test_savitch_caps():
    with pytest.raises(CapExceeded):
        build_savitch_network(7)
    with pytest.raises(ValueError):
        build_savitch_network(2)


def test_knowledge_network_edges_are_valid_steps():
    n = 4
    sets = [KnowledgeSet.empty(n), KnowledgeSet.of(n, [(0, 1)]), KnowledgeSet.of(n, [(0, 2)]),
            KnowledgeSet.complete(n)]
    net, lab = knowledge_network(n, sets)
    for e in net.edges:
        assert ck_step_valid(lab[e.u], lab[e.v], e.label.edge)
    # and every valid step is present
    count = sum(ck_step_valid(sets[a], sets[b], e) for a in range(4) for b in range(a + 1, 4)
                for e in [(u, v) for u in range(n) for v in range(n) if u != v])
    assert count == len(net.edges)


def test_validation_rejects_bad_labelings(savitch3):
    net, lab = savitch3
    bad = dict(lab.labels)
    bad[net.s_prime] = KnowledgeSet.of(3, [(0, 1)])
    assert not validate_certain_knowledge(net, CKLabeling(bad))
    missing = {v: k for v, k in lab.labels.items() if v != net.t_prime}
    with pytest.raises(MissingLabel):
        validate_certain_knowledge(net, CKLabeling(missing))
    # an edge whose label cannot produce the change
    n = 3
    net2 = SwitchingNetwork(n, 0, 1, (0, 1), (NetEdge(0, 1, Label((1, 2))),))
    lab2 = CKLabeling({0: KnowledgeSet.empty(n), 1: KnowledgeSet.complete(n)})
    assert not validate_certain_knowledge(net2, lab2)


def test_labeling_json_round_trip(savitch3):
    _, lab = savitch3
    assert CKLabeling.from_json(3, lab.to_json()) == lab


def test_subset_network_ids():
    n = 5
    net, lab = subset_network(n, [1, 2, 3], [(0, 1), (1, 2)], w2=[3])
    assert lab[0b101] == KnowledgeSet.of(n, [(0, 1), (3, 4)])
    assert lab[8].is_complete and net.t_prime == 8 and net.s_prime == 0
    assert k_set(n, [2], w2=[2]) == KnowledgeSet.of(n, [(2, 4)])

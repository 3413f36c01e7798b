from __future__ import annotations

import sys

import pytest

from swnet.certificates import build_gP
from swnet.knowledge import build_savitch_network
from swnet.kset import KnowledgeSet, StateOfKnowledge


@pytest.fixture(scope="session")
def savitch3():
    return build_savitch_network(3)


@pytest.fixture(scope="session")
def savitch4():
    return build_savitch_network(4)


@pytest.fixture(scope="session")
def certs():
    # k=3 takes a couple of seconds; share it across modules
    return {k: build_gP(k) for k in range(4)}


def ks(n, *edges):
    return KnowledgeSet.of(n, edges)


def sok(*members):
    return StateOfKnowledge.of(members)


@pytest.fixture
def walk_states_fig4():
    """The five-step walk whose knowledge sequence has fourteen entries."""
    from swnet.subsetwalk import Walk
    n = 6
    st = {0: sok(ks(n)),
          1: sok(ks(n, (0, 1)), ks(n, (0, 2)), ks(n, (0, 3))),
          2: sok(ks(n, (0, 2)), ks(n, (0, 3))),
          3: sok(ks(n, (0, 3))),
          4: sok(ks(n, (0, 3), (0, 4))),
          5: sok(KnowledgeSet.complete(n))}
    w = Walk((0, 1, 2, 3, 4, 5), ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5)))
    return w, st


@pytest.fixture
def walk_states_loop():
    """Three-step walk whose subset-walk graph has one cycle besides the path."""
    from swnet.subsetwalk import Walk
    n = 5
    k1, k2, k3 = ks(n, (0, 1)), ks(n, (0, 1), (0, 2)), ks(n, (0, 2), (0, 3))
    st = {0: sok(ks(n)), 1: sok(k1, k3), 2: sok(k2, k3), 3: sok(KnowledgeSet.complete(n))}
    w = Walk((0, 1, 2, 3), ((0, 1), (1, 2), (2, 4)))
    return w, st


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)

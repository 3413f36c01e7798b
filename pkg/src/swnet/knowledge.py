"""Certain-knowledge labelings and the networks built from knowledge sets.

The Savitch builder enumerates every knowledge set a reversible
divide-and-conquer search for an s-t path can ever hold, over all inputs,
and connects two such sets by every label that turns one into the other.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .graph import Edge, all_edges, check_n, edge_index, mask_vertices
from .kset import KnowledgeSet, ck_step_valid, closure_bits, full_bits
from .network import CapExceeded, Label, NetEdge, SwitchingNetwork

DEFAULT_SAVITCH_CAP = 6


@dataclass(frozen=True)
class CKLabeling:
    labels: dict

    def __getitem__(self, v: int) -> KnowledgeSet:
        return self.labels[v]

    def __contains__(self, v: int) -> bool:
        return v in self.labels

    def to_json(self) -> dict:
        return {"labels": [{"vertex": v, "edges": k.to_json()} for v, k in sorted(self.labels.items())]}

    @classmethod
    def from_json(cls, n: int, data: dict) -> "CKLabeling":
        return cls({int(d["vertex"]): KnowledgeSet.from_json(n, d["edges"]) for d in data["labels"]})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


class MissingLabel(KeyError):
    pass


def validate_certain_knowledge(net: SwitchingNetwork, lab: CKLabeling) -> bool:
    net.require_monotone()
    for v in net.vertices:
        if v not in lab:
            raise MissingLabel(f"network vertex {v} has no knowledge set")
    if lab[net.s_prime] != KnowledgeSet.empty(net.n):
        return False
    if not lab[net.t_prime].is_complete:
        return False
    return all(ck_step_valid(lab[e.u], lab[e.v], e.label.edge) for e in net.edges)


# ---------------------------------------------------------------------------
# networks whose vertices are knowledge sets

def knowledge_network(n: int, ksets: Sequence[KnowledgeSet], labels: Optional[Iterable[Edge]] = None,
                      ids: Optional[Sequence[int]] = None) -> tuple[SwitchingNetwork, CKLabeling]:
    """Connect the given knowledge sets by every label giving a valid reversible step.

    ``ksets`` must contain the empty set and ``COMPLETE``; they become ``s'``
    and ``t'``.  Vertex ids default to list positions.
    """
    ksets = list(ksets)
    if len(set(ksets)) != len(ksets):
        raise ValueError("knowledge sets must be distinct")
    ids = list(range(len(ksets))) if ids is None else list(ids)
    labels = list(all_edges(n)) if labels is None else sorted(set(labels))
    empty, complete = KnowledgeSet.empty(n), KnowledgeSet.complete(n)
    pos = {k: i for i, k in enumerate(ksets)}
    if empty not in pos or complete not in pos:
        raise ValueError("need both the empty knowledge set and COMPLETE")
    # past 64 edge bits numpy falls back to Python ints in object arrays
    dtype = np.uint64 if n * (n - 1) <= 64 else object
    bits = np.array([k.bits for k in ksets], dtype=dtype)
    edges = []
    for e in labels:
        ebit = 1 << edge_index(e, n)
        grown = np.array([closure_bits(k.bits | ebit, n) for k in ksets], dtype=dtype)
        # ok[a, b]: K_b inside cl(K_a + e)
        ok = (bits[None, :] & ~grown[:, None]) == 0
        valid = np.triu(ok & ok.T, 1)
        for a, b in zip(*np.nonzero(valid)):
            edges.append(NetEdge(ids[a], ids[b], Label(e)))
    edges.sort(key=lambda x: (x.u, x.v, x.label))
    net = SwitchingNetwork(n, ids[pos[empty]], ids[pos[complete]], tuple(ids), tuple(edges))
    return net, CKLabeling({ids[i]: k for i, k in enumerate(ksets)})


# ---------------------------------------------------------------------------
# modified Savitch search

def _bit(u: int, v: int, n: int) -> int:
    return 1 << edge_index((u, v), n)


def _or_all(x: int, family: Iterable[int]) -> set[int]:
    return {x | y for y in family}


def savitch_holdings(n: int) -> frozenset[int]:
    """Every raw edge set the reversible search for ``s -> t`` may hold at some moment."""
    inner = [v for v in range(1, n - 1)]

    @lru_cache(maxsize=None)
    def search(v1: int, v2: int, k: int) -> frozenset[int]:
        # holdings while deciding whether v1 reaches v2 in <= k steps, starting from nothing
        d = _bit(v1, v2, n)
        out = {0, d}
        if k >= 2:
            h1, h2 = k // 2, k - k // 2
            for m in inner:
                if m in (v1, v2):
                    continue
                b1, b2 = _bit(v1, m, n), _bit(m, v2, n)
                first, second = search(v1, m, h1), search(m, v2, h2)
                undo1, undo2 = unfind(v1, m, h1), unfind(m, v2, h2)
                out |= first
                out |= _or_all(b1, second)
                out.add(b1 | b2 | d)
                out |= _or_all(b2 | d, undo1)
                out |= _or_all(d, undo2)
                out |= undo1
        return frozenset(out)

    @lru_cache(maxsize=None)
    def unfind(v1: int, v2: int, k: int) -> frozenset[int]:
        # holdings while forgetting a known v1 -> v2 by finding it again
        d = _bit(v1, v2, n)
        out = {d, 0}
        if k >= 2:
            h1, h2 = k // 2, k - k // 2
            for m in inner:
                if m in (v1, v2):
                    continue
                b1, b2 = _bit(v1, m, n), _bit(m, v2, n)
                first, second = search(v1, m, h1), search(m, v2, h2)
                undo1, undo2 = unfind(v1, m, h1), unfind(m, v2, h2)
                out |= _or_all(d, first)
                out |= _or_all(d | b1, second)
                out.add(d | b1 | b2)
                out.add(b1 | b2)
                out |= _or_all(b2, undo1)
                out |= undo2
                out |= _or_all(d, undo1)
        return frozenset(out)

    return search(0, n - 1, n - 1)


def savitch_knowledge_sets(n: int) -> list[KnowledgeSet]:
    found = {closure_bits(b, n) for b in savitch_holdings(n)}
    found.add(full_bits(n))
    return [KnowledgeSet(n, b) for b in sorted(found)]


def build_savitch_network(n: int, cap: int = DEFAULT_SAVITCH_CAP) -> tuple[SwitchingNetwork, CKLabeling]:
    check_n(n)
    if n < 3:
        raise ValueError("the Savitch construction needs at least one internal vertex (n >= 3)")
    if n > cap:
        raise CapExceeded(f"Savitch construction capped at n={cap}; got n={n}")
    return knowledge_network(n, savitch_knowledge_sets(n))


# ---------------------------------------------------------------------------
# the network over the sets K_I

def k_set(n: int, vertices: Iterable[int], w2: Iterable[int] = ()) -> KnowledgeSet:
    """``s -> v`` for each chosen vertex outside ``w2``; ``v -> t`` for those inside."""
    w2 = set(w2)
    return KnowledgeSet.of(n, [(v, n - 1) if v in w2 else (0, v) for v in vertices])


def subset_network(n: int, pool: Sequence[int], labels: Iterable[Edge], w2: Iterable[int] = ()
                   ) -> tuple[SwitchingNetwork, CKLabeling]:
    """All ``K_I`` for ``I`` a subset of ``pool``, plus ``COMPLETE``.

    The vertex for ``K_I`` has id equal to the bitmask of ``I`` over ``pool``
    positions; ``COMPLETE`` gets id ``2**len(pool)``.
    """
    w2 = list(w2)
    m = len(pool)
    ksets, ids = [], []
    for mask in range(1 << m):
        chosen = [pool[i] for i in range(m) if mask >> i & 1]
        ksets.append(k_set(n, chosen, w2))
        ids.append(mask)
    ksets.append(KnowledgeSet.complete(n))
    ids.append(1 << m)
    return knowledge_network(n, ksets, labels, ids)


def vertices_of_mask(pool: Sequence[int], mask: int) -> list[int]:
    return [pool[i - 1] for i in mask_vertices(mask)]

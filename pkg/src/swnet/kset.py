"""Knowledge sets, states of knowledge and the reversible step relation.

A :class:`KnowledgeSet` is stored by its transitive closure as an edge bitmask
(layout of :func:`swnet.graph.edge_index`).  Any edge set from whose closure
``s -> t`` follows collapses to the complete digraph, ``COMPLETE``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .graph import Edge, all_edges, bits_to_edges, edge_index, edges_to_bits, vertex_name


@lru_cache(maxsize=1 << 16)
def closure_bits(bits: int, n: int) -> int:
    rows = [0] * n
    for u, v in bits_to_edges(bits, n):
        rows[u] |= 1 << v
    for k in range(n):
        kb = 1 << k
        rk = rows[k]
        for i in range(n):
            if rows[i] & kb:
                rows[i] |= rk
    if rows[0] >> (n - 1) & 1:
        return full_bits(n)
    out = 0
    for i, (u, v) in enumerate(all_edges(n)):
        if rows[u] >> v & 1:
            out |= 1 << i
    return out


def full_bits(n: int) -> int:
    return (1 << (n * (n - 1))) - 1


@dataclass(frozen=True)
class KnowledgeSet:
    n: int
    bits: int

    @classmethod
    def of(cls, n: int, edges: Iterable[Edge] = ()) -> "KnowledgeSet":
        return cls(n, closure_bits(edges_to_bits(edges, n), n))

    @classmethod
    def from_raw_bits(cls, n: int, bits: int) -> "KnowledgeSet":
        return cls(n, closure_bits(bits, n))

    @classmethod
    def complete(cls, n: int) -> "KnowledgeSet":
        return cls(n, full_bits(n))

    @classmethod
    def empty(cls, n: int) -> "KnowledgeSet":
        return cls(n, 0)

    @property
    def is_complete(self) -> bool:
        return bool(self.bits >> edge_index((0, self.n - 1), self.n) & 1)

    @property
    def edges(self) -> list[Edge]:
        return bits_to_edges(self.bits, self.n)

    def __le__(self, other: "KnowledgeSet") -> bool:
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "KnowledgeSet") -> bool:
        return other <= self

    def __or__(self, other: "KnowledgeSet") -> "KnowledgeSet":
        return KnowledgeSet(self.n, closure_bits(self.bits | other.bits, self.n))

    def with_edge(self, e: Edge) -> "KnowledgeSet":
        return KnowledgeSet(self.n, closure_bits(self.bits | 1 << edge_index(e, self.n), self.n))

    def endpoints(self) -> set[int]:
        return {v for e in self.edges for v in e}

    def __repr__(self):
        if self.is_complete:
            return "K{COMPLETE}"
        inner = ",".join(f"{vertex_name(u, self.n)}->{vertex_name(v, self.n)}" for u, v in self.edges)
        return "K{" + inner + "}"

    def to_json(self):
        if self.is_complete:
            return "COMPLETE"
        return [list(e) for e in self.edges]

    @classmethod
    def from_json(cls, n: int, data) -> "KnowledgeSet":
        if data == "COMPLETE":
            return cls.complete(n)
        return cls.of(n, [(int(u), int(v)) for u, v in data])


def transitive_closure(edges: Iterable[Edge], n: int) -> KnowledgeSet:
    return KnowledgeSet.of(n, edges)


def ks_contains(k1: KnowledgeSet, k2: KnowledgeSet) -> bool:
    """``k1`` is included in ``k2`` in the closure sense."""
    return k1 <= k2


def ck_step_valid(ka: KnowledgeSet, kb: KnowledgeSet, e: Edge) -> bool:
    """True iff one can get from ``ka`` to ``kb`` with the edge ``e``."""
    return kb <= ka.with_edge(e) and ka <= kb.with_edge(e)


def antichain(members: Iterable[KnowledgeSet]) -> tuple[KnowledgeSet, ...]:
    """Drop duplicates and every member that contains another member."""
    uniq = sorted(set(members), key=lambda k: k.bits)
    keep = []
    for k in uniq:
        if not any(other <= k for other in uniq if other != k):
            keep.append(k)
    return tuple(keep)


@dataclass(frozen=True)
class StateOfKnowledge:
    """A disjunction of knowledge sets, kept as an antichain sorted by bitmask."""

    members: tuple[KnowledgeSet, ...]

    def __post_init__(self):
        members = antichain(self.members)
        if not members:
            raise ValueError("a state of knowledge needs at least one knowledge set")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, members: Iterable[KnowledgeSet]) -> "StateOfKnowledge":
        return cls(tuple(members))

    @classmethod
    def single(cls, k: KnowledgeSet) -> "StateOfKnowledge":
        return cls((k,))

    @property
    def n(self) -> int:
        return self.members[0].n

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __le__(self, other: "StateOfKnowledge") -> bool:
        return all(any(k1 <= k2 for k1 in self.members) for k2 in other.members)

    def equivalent(self, other: "StateOfKnowledge") -> bool:
        return self <= other and other <= self

    def with_edge(self, e: Edge) -> "StateOfKnowledge":
        return StateOfKnowledge(tuple(k.with_edge(e) for k in self.members))

    def __repr__(self):
        return "J[" + ", ".join(map(repr, self.members)) + "]"

    def to_json(self):
        return [k.to_json() for k in self.members]

    @classmethod
    def from_json(cls, n: int, data) -> "StateOfKnowledge":
        return cls(tuple(KnowledgeSet.from_json(n, k) for k in data))


def sok_step_valid(ja: StateOfKnowledge, jb: StateOfKnowledge, e: Edge) -> bool:
    return (all(any(kb <= ka.with_edge(e) for kb in jb) for ka in ja)
            and all(any(ka <= kb.with_edge(e) for ka in ja) for kb in jb))


def k_from_vertices(n: int, vertices: Iterable[int], w2: Iterable[int] = ()) -> KnowledgeSet:
    """``K_I``: ``s -> v`` for members outside ``w2``, ``v -> t`` for members in ``w2``."""
    w2 = set(w2)
    edges = [(v, n - 1) if v in w2 else (0, v) for v in vertices]
    return KnowledgeSet.of(n, edges)


def raw_bits(edges: Iterable[Edge], n: int) -> int:
    return edges_to_bits(edges, n)

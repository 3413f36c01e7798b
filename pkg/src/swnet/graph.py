"""Input digraphs, s-t cuts, path specifications and the reachability oracle.

Vertex ids are dense integers ``0 .. n-1`` with ``s = 0`` and ``t = n - 1``.
A cut is stored as a bitmask over the internal vertices ``1 .. n-2``: bit
``v - 1`` is set when ``v`` lies on the source side.  ``s`` is always on the
source side and ``t`` never is, so neither is stored.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple

Edge = tuple[int, int]


class InvalidDimension(ValueError):
    pass


def check_n(n: int) -> None:
    if n < 2:
        raise InvalidDimension(f"need at least 2 vertices (s and t), got n={n}")


def vertex_name(v: int, n: int) -> str:
    if v == 0:
        return "s"
    if v == n - 1:
        return "t"
    return str(v)


# ---------------------------------------------------------------------------
# edge indexing

def edge_index(e: Edge, n: int) -> int:
    """Position of ``u->v`` in lexicographic order of the ``n(n-1)`` possible edges."""
    u, v = e
    return u * (n - 1) + (v if v < u else v - 1)


@lru_cache(maxsize=None)
def all_edges(n: int) -> tuple[Edge, ...]:
    return tuple((u, v) for u in range(n) for v in range(n) if u != v)


def edges_to_bits(edges: Iterable[Edge], n: int) -> int:
    bits = 0
    for e in edges:
        bits |= 1 << edge_index(e, n)
    return bits


def bits_to_edges(bits: int, n: int) -> list[Edge]:
    table = all_edges(n)
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(table[i])
        bits >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# input digraphs

@dataclass(frozen=True)
class DigraphInput:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop {u}->{v}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u}->{v} out of range for n={self.n}")

    @property
    def s(self) -> int:
        return 0

    @property
    def t(self) -> int:
        return self.n - 1

    @property
    def bits(self) -> int:
        return edges_to_bits(self.edges, self.n)

    @classmethod
    def from_bits(cls, n: int, bits: int) -> "DigraphInput":
        return cls(n, frozenset(bits_to_edges(bits, n)))

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    @classmethod
    def from_json(cls, data: dict) -> "DigraphInput":
        return cls(int(data["n"]), frozenset((int(u), int(v)) for u, v in data["edges"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self):
        inner = ", ".join(f"{vertex_name(u, self.n)}->{vertex_name(v, self.n)}"
                          for u, v in sorted(self.edges))
        return "{" + inner + "}"


def has_st_path(g: DigraphInput) -> bool:
    """Plain BFS from s; true iff t is reachable."""
    adj: dict[int, list[int]] = {}
    for u, v in g.edges:
        adj.setdefault(u, []).append(v)
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        if u == g.n - 1:
            return True
        for v in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def st_reachable_bits(bits: int, n: int) -> bool:
    """Same as :func:`has_st_path` for an edge bitmask; used by the exhaustive verifier."""
    rows = [0] * n
    for u, v in bits_to_edges(bits, n):
        rows[u] |= 1 << v
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return bool(seen >> (n - 1) & 1)


# ---------------------------------------------------------------------------
# cuts

class Cut(NamedTuple):
    n: int
    mask: int

    def contains(self, v: int) -> bool:
        return in_cut(v, self.mask, self.n)

    def members(self) -> list[int]:
        return [0] + [v for v in range(1, self.n - 1) if self.mask >> (v - 1) & 1]


def enumerate_cuts(n: int) -> list[Cut]:
    check_n(n)
    return [Cut(n, mask) for mask in range(1 << (n - 2))]


def in_cut(v: int, mask: int, n: int) -> bool:
    if v == 0:
        return True
    if v == n - 1:
        return False
    return bool(mask >> (v - 1) & 1)


def edge_crosses(e: Edge, c: Cut) -> bool:
    u, v = e
    return in_cut(u, c.mask, c.n) and not in_cut(v, c.mask, c.n)


@lru_cache(maxsize=None)
def crossing_masks(n: int) -> tuple[int, ...]:
    """For every cut mask, the edge bitmask of all edges crossing it."""
    table = all_edges(n)
    out = []
    for mask in range(1 << (n - 2)):
        inside = 1 | (mask << 1)
        bits = 0
        for i, (u, v) in enumerate(table):
            if inside >> u & 1 and not inside >> v & 1:
                bits |= 1 << i
        out.append(bits)
    return tuple(out)


def internal_vertices(n: int) -> range:
    return range(1, n - 1)


def vertex_set_mask(vertices: Iterable[int]) -> int:
    """Bitmask over internal vertices, same layout as cut masks."""
    mask = 0
    for v in vertices:
        if v <= 0:
            raise ValueError(f"vertex {v} is not internal")
        mask |= 1 << (v - 1)
    return mask


def mask_vertices(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


# ---------------------------------------------------------------------------
# paths

@dataclass(frozen=True)
class PathSpec:
    """A directed s-t path ``s -> v_1 -> ... -> v_k -> t`` inside an n-vertex graph."""

    n: int
    internal: tuple[int, ...]

    def __post_init__(self):
        check_n(self.n)
        object.__setattr__(self, "internal", tuple(self.internal))
        if len(set(self.internal)) != len(self.internal):
            raise ValueError(f"path vertices not distinct: {self.internal}")
        for v in self.internal:
            if not 0 < v < self.n - 1:
                raise ValueError(f"path vertex {v} is not internal for n={self.n}")

    @property
    def vertices(self) -> tuple[int, ...]:
        return (0,) + self.internal + (self.n - 1,)

    @property
    def edges(self) -> tuple[Edge, ...]:
        vs = self.vertices
        return tuple(zip(vs[:-1], vs[1:]))

    def __len__(self):
        return len(self.internal) + 1

    def crossing_edges(self, c: Cut) -> list[Edge]:
        return [e for e in self.edges if edge_crosses(e, c)]

    def with_n(self, n: int) -> "PathSpec":
        return PathSpec(n, self.internal)

    def to_digraph(self) -> DigraphInput:
        return DigraphInput(self.n, frozenset(self.edges))


def canonical_path(length_internal: int) -> PathSpec:
    """``s -> 1 -> 2 -> ... -> L -> t`` on ``L + 2`` vertices."""
    return PathSpec(length_internal + 2, tuple(range(1, length_internal + 1)))

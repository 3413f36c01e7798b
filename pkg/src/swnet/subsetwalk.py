"""Knowledge-sequence extraction and the subset-walk graph of a network walk.

Along a walk ``a'_0 = s', ..., a'_m = t'`` every position carries the state of
knowledge of its vertex.  A *subset state* ``(i, S)`` means "standing at
position i holding the members S of that state".  Each walk edge pairs up the
subset states on its two sides by a reversible move; following the moves from
``(0, {{}})`` gives a knowledge-set sequence from the empty set to
``COMPLETE``, and all moves together form a graph made of one path plus
disjoint directed cycles.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .graph import Edge, PathSpec
from .kset import KnowledgeSet, StateOfKnowledge, ck_step_valid
from .network import NetEdge, SwitchingNetwork

MAX_MEMBERS = 12


@dataclass(frozen=True)
class Walk:
    """Network vertices ``v_0..v_m`` and the labels of the ``m`` edges between them."""

    vertices: tuple[int, ...]
    labels: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "labels", tuple(tuple(e) for e in self.labels))
        if len(self.vertices) != len(self.labels) + 1:
            raise ValueError("a walk needs exactly one label per step")

    def __len__(self):
        return len(self.labels)

    def steps(self):
        for i, e in enumerate(self.labels):
            yield self.vertices[i], self.vertices[i + 1], e

    @classmethod
    def from_edges(cls, start: int, edges: Sequence[NetEdge]) -> "Walk":
        vs = [start]
        for e in edges:
            if vs[-1] not in (e.u, e.v):
                raise ValueError(f"edge {e} does not continue the walk at {vs[-1]}")
            vs.append(e.other(vs[-1]))
        return cls(tuple(vs), tuple(e.label.edge for e in edges))

    def reversed(self) -> "Walk":
        return Walk(self.vertices[::-1], self.labels[::-1])

    def check_in(self, net: SwitchingNetwork):
        have = {(min(e.u, e.v), max(e.u, e.v), e.label.edge) for e in net.edges}
        for a, b, e in self.steps():
            if (min(a, b), max(a, b), e) not in have:
                raise ValueError(f"walk step {a}-{b} labelled {e} is not a network edge")


class WalkOutsidePath(ValueError):
    pass


def _union(members: Sequence[KnowledgeSet], mask: int) -> KnowledgeSet:
    out = KnowledgeSet.empty(members[0].n)
    i = 0
    while mask:
        if mask & 1:
            out = out | members[i]
        mask >>= 1
        i += 1
    return out


@dataclass
class _StepArrows:
    """Black-arrow data for one walk edge, with ``a`` the earlier side."""

    a_black: list[int]     # a-member -> b-representative it leads to
    b_black: list[int]     # b-member -> a-representative it leads to
    a_rep: dict[int, int]  # a-representative -> matching b-representative
    b_rep: dict[int, int]


def _arrows(ja: Sequence[KnowledgeSet], jb: Sequence[KnowledgeSet], e: Edge) -> _StepArrows:
    # orange arrows to the lowest-index member satisfying the containment
    a_orange, b_orange = [], []
    for ka in ja:
        grown = ka.with_edge(e)
        j = next((j for j, kb in enumerate(jb) if kb <= grown), None)
        if j is None:
            raise ValueError(f"no step for {ka} across {e}: states violate the step condition")
        a_orange.append(j)
    for kb in jb:
        grown = kb.with_edge(e)
        i = next((i for i, ka in enumerate(ja) if ka <= grown), None)
        if i is None:
            raise ValueError(f"no step for {kb} across {e}: states violate the step condition")
        b_orange.append(i)

    def nxt(node):
        side, idx = node
        return ("b", a_orange[idx]) if side == "a" else ("a", b_orange[idx])

    # find cycles of the functional graph and pick the lowest index per side
    a_rep: dict[int, int] = {}
    b_rep: dict[int, int] = {}
    rep_of_cycle: dict[tuple, tuple[int, int]] = {}
    cycle_id: dict[tuple, tuple] = {}
    for start in [("a", i) for i in range(len(ja))] + [("b", j) for j in range(len(jb))]:
        seen = []
        node = start
        while node not in seen and node not in cycle_id:
            seen.append(node)
            node = nxt(node)
        if node in cycle_id or node not in seen:
            continue
        cyc = seen[seen.index(node):]
        key = tuple(sorted(cyc))
        ra = min(i for s, i in cyc if s == "a")
        rb = min(j for s, j in cyc if s == "b")
        rep_of_cycle[key] = (ra, rb)
        for x in cyc:
            cycle_id[x] = key
        a_rep[ra] = rb
        b_rep[rb] = ra

    def black(node, want_side):
        while True:
            node = nxt(node)
            if node in cycle_id:
                ra, rb = rep_of_cycle[cycle_id[node]]
                return rb if want_side == "b" else ra

    a_black = [black(("a", i), "b") for i in range(len(ja))]
    b_black = [black(("b", j), "a") for j in range(len(jb))]
    return _StepArrows(a_black, b_black, a_rep, b_rep)


def _move(mask: int, rep: dict[int, int], black: list[int], back_rep: dict[int, int]
          ) -> tuple[bool, int]:
    """Apply the reversible move to a subset ``mask`` of the near side.

    Returns ``(travelled, new_mask)``; the new mask is over the far side when
    travelled, else over the near side.
    """
    members = [i for i in range(mask.bit_length()) if mask >> i & 1]
    non_reps = [i for i in members if i not in rep]
    far = 0
    for i in members:
        if i in rep:
            far |= 1 << rep[i]
    if not non_reps:
        return True, far
    far ^= 1 << black[non_reps[0]]
    near = 0
    for i in non_reps:
        near |= 1 << i
    f = far
    j = 0
    while f:
        if f & 1:
            near |= 1 << back_rep[j]
        f >>= 1
        j += 1
    return False, near


Node = tuple[int, int]  # (walk position, member bitmask)


@dataclass(frozen=True)
class HEdge:
    src: Node
    dst: Node
    step: int  # index of the walk edge this move belongs to
    label: Edge


@dataclass
class SubsetWalkGraph:
    walk: Walk
    members: list[tuple[KnowledgeSet, ...]]
    path: list[HEdge]
    cycles: list[list[HEdge]]
    succ: dict = field(repr=False, default_factory=dict)

    def knowledge(self, node: Node) -> KnowledgeSet:
        pos, mask = node
        return _union(self.members[pos], mask)

    def all_edges(self) -> list[HEdge]:
        """Path edges first, then the cycles in order; this fixes edge numbering."""
        out = list(self.path)
        for c in self.cycles:
            out.extend(c)
        return out

    def correspondence(self) -> dict[int, list[int]]:
        """Walk-edge index -> positions of its moves in :meth:`all_edges`."""
        out: dict[int, list[int]] = {i: [] for i in range(len(self.walk))}
        for k, h in enumerate(self.all_edges()):
            out[h.step].append(k)
        return out

    def degrees_ok(self) -> bool:
        m = len(self.walk)
        indeg: dict[Node, int] = {}
        outdeg: dict[Node, int] = {}
        for h in self.all_edges():
            outdeg[h.src] = outdeg.get(h.src, 0) + 1
            indeg[h.dst] = indeg.get(h.dst, 0) + 1
        nodes = set(indeg) | set(outdeg)
        for v in nodes:
            if v == (0, 1):
                if outdeg.get(v, 0) != 1 or indeg.get(v, 0) != 0:
                    return False
            elif v == (m, 1):
                if indeg.get(v, 0) != 1 or outdeg.get(v, 0) != 0:
                    return False
            elif indeg.get(v, 0) != 1 or outdeg.get(v, 0) != 1:
                return False
        expected = 2 + sum((1 << len(self.members[i])) - 1 for i in range(1, m))
        return len(nodes) == expected


def _check_walk(walk: Walk, states: Mapping[int, StateOfKnowledge], path: Optional[PathSpec]):
    if path is not None:
        allowed = set(path.edges)
        for i, e in enumerate(walk.labels):
            if e not in allowed:
                raise WalkOutsidePath(f"walk step {i} uses label {e}, which is not on the path")
    for v in walk.vertices:
        if v not in states:
            raise KeyError(f"no state of knowledge for walk vertex {v}")
    first, last = states[walk.vertices[0]], states[walk.vertices[-1]]
    n = first.n
    if first.members != (KnowledgeSet.empty(n),) or last.members != (KnowledgeSet.complete(n),):
        raise ValueError("walk must start at a vertex with state {{}} and end at one with {COMPLETE}")
    for v in walk.vertices:
        if len(states[v]) > MAX_MEMBERS:
            raise ValueError(f"state at {v} has {len(states[v])} members; cap is {MAX_MEMBERS}")


def build_subset_walk_graph(walk: Walk, states: Mapping[int, StateOfKnowledge],
                            path: Optional[PathSpec] = None) -> SubsetWalkGraph:
    _check_walk(walk, states, path)
    m = len(walk)
    members = [states[v].members for v in walk.vertices]
    succ: dict[Node, HEdge] = {}
    for i, (_, _, e) in enumerate(walk.steps()):
        ar = _arrows(members[i], members[i + 1], e)
        # forward moves of the near side, backward moves of the far side
        for mask in range(1, 1 << len(members[i])):
            moved, new = _move(mask, ar.a_rep, ar.a_black, ar.b_rep)
            dst = (i + 1, new) if moved else (i, new)
            src_node = (i, mask)
            # odd subsets on the earlier side start the move
            if bin(mask).count("1") % 2 == 1:
                succ[src_node] = HEdge(src_node, dst, i, e)
        for mask in range(1, 1 << len(members[i + 1])):
            moved, new = _move(mask, ar.b_rep, ar.b_black, ar.a_rep)
            dst = (i, new) if moved else (i + 1, new)
            src_node = (i + 1, mask)
            # even subsets on the later side start the move
            if bin(mask).count("1") % 2 == 0:
                succ[src_node] = HEdge(src_node, dst, i, e)
    start, end = (0, 1), (m, 1)
    path_edges = []
    node = start
    used = set()
    while node != end:
        h = succ[node]
        path_edges.append(h)
        used.add(node)
        node = h.dst
        if node in used:
            raise RuntimeError("subset walk re-entered a state before reaching the end")
    used.add(end)
    cycles = []
    for node in sorted(succ):
        if node in used:
            continue
        cyc = []
        x = node
        while x not in used:
            used.add(x)
            h = succ[x]
            cyc.append(h)
            x = h.dst
        cycles.append(cyc)
    return SubsetWalkGraph(walk, members, path_edges, cycles, succ)


def extract_knowledge_sequence(walk: Walk, states: Mapping[int, StateOfKnowledge],
                               path: Optional[PathSpec] = None) -> list[tuple[KnowledgeSet, int]]:
    """Knowledge sets ``K_0 = {} .. K_m = COMPLETE`` with the walk vertex each is read at."""
    h = build_subset_walk_graph(walk, states, path)
    nodes = [(0, 1)] + [e.dst for e in h.path]
    return [(h.knowledge(x), walk.vertices[x[0]]) for x in nodes]


def sequence_labels(walk: Walk, states: Mapping[int, StateOfKnowledge],
                    path: Optional[PathSpec] = None) -> list[Edge]:
    h = build_subset_walk_graph(walk, states, path)
    return [e.label for e in h.path]


def check_sequence(seq: Sequence[tuple[KnowledgeSet, int]], labels: Sequence[Edge],
                   states: Mapping[int, StateOfKnowledge]) -> bool:
    """Endpoint, step and union-of-members conditions of a knowledge sequence."""
    if not seq:
        return False
    n = seq[0][0].n
    if seq[0][0] != KnowledgeSet.empty(n) or not seq[-1][0].is_complete:
        return False
    for (ka, _), (kb, _), e in zip(seq, seq[1:], labels):
        if not ck_step_valid(ka, kb, e):
            return False
    for k, v in seq:
        mem = states[v].members
        if not any(_union(mem, mask) == k for mask in range(1, 1 << len(mem))):
            return False
    return True

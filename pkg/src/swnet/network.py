"""Switching networks: data model, evaluation, exhaustive verification, chaining.

A network is an undirected multigraph over its own vertex ids.  Each edge carries
a literal over the input digraph: the directed edge ``u->v`` or its negation.
Acceptance means ``s'`` and ``t'`` are joined using only literals the input
satisfies.
"""
from __future__ import annotations

import itertools
import json
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import DigraphInput, Edge, edge_index, st_reachable_bits, vertex_name
from .kset import KnowledgeSet, StateOfKnowledge

DEFAULT_MAX_N = 5


class CapExceeded(ValueError):
    pass


class NonMonotone(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Label:
    edge: Edge
    negated: bool = False

    def __str__(self):
        u, v = self.edge
        return f"!({u}->{v})" if self.negated else f"{u}->{v}"


@dataclass(frozen=True, order=True)
class NetEdge:
    u: int
    v: int
    label: Label

    def other(self, x: int) -> int:
        return self.v if x == self.u else self.u


@dataclass(frozen=True)
class SwitchingNetwork:
    n: int
    s_prime: int
    t_prime: int
    vertices: tuple[int, ...]
    edges: tuple[NetEdge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.s_prime == self.t_prime:
            raise ValueError("s' and t' must differ")
        vs = set(self.vertices)
        if self.s_prime not in vs or self.t_prime not in vs:
            raise ValueError("s' and t' must be network vertices")
        for e in self.edges:
            if e.u not in vs or e.v not in vs:
                raise ValueError(f"edge {e} uses an unknown vertex")
            a, b = e.label.edge
            if a == b or not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"label {e.label} is not an edge of the {self.n}-vertex input graph")

    @property
    def is_monotone(self) -> bool:
        return not any(e.label.negated for e in self.edges)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def require_monotone(self):
        if not self.is_monotone:
            raise NonMonotone("operation needs a monotone network")

    def adjacency(self) -> dict[int, list[NetEdge]]:
        adj: dict[int, list[NetEdge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e.u].append(e)
            if e.v != e.u:
                adj[e.v].append(e)
        return adj

    def labels_used(self) -> set[Edge]:
        return {e.label.edge for e in self.edges}

    def restrict(self, allowed: Iterable[Edge]) -> "SwitchingNetwork":
        """Drop every edge whose label is not one of ``allowed``."""
        allowed = set(allowed)
        return SwitchingNetwork(self.n, self.s_prime, self.t_prime, self.vertices,
                                tuple(e for e in self.edges if e.label.edge in allowed))

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "s_prime": self.s_prime,
            "t_prime": self.t_prime,
            "vertices": list(self.vertices),
            "edges": [{"u": e.u, "v": e.v, "from": e.label.edge[0], "to": e.label.edge[1],
                       "negated": e.label.negated} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "SwitchingNetwork":
        edges = tuple(NetEdge(int(d["u"]), int(d["v"]),
                              Label((int(d["from"]), int(d["to"])), bool(d.get("negated", False))))
                      for d in data["edges"])
        return cls(int(data["n"]), int(data["s_prime"]), int(data["t_prime"]),
                   tuple(int(v) for v in data["vertices"]), edges)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def chain_network(n: int, path: Iterable[Edge]) -> SwitchingNetwork:
    """``s'`` - e1 - m1 - e2 - ... - t': one edge per label, in order."""
    path = list(path)
    vertices = tuple(range(len(path) + 1))
    edges = tuple(NetEdge(i, i + 1, Label(e)) for i, e in enumerate(path))
    return SwitchingNetwork(n, 0, len(path), vertices, edges)


# ---------------------------------------------------------------------------
# evaluation

def _label_consistent(label: Label, present: bool) -> bool:
    return present != label.negated


def evaluate(net: SwitchingNetwork, g: DigraphInput) -> bool:
    if net.n != g.n:
        raise ValueError(f"network is over n={net.n} but input has n={g.n}")
    adj = net.adjacency()
    seen = {net.s_prime}
    queue = deque([net.s_prime])
    while queue:
        x = queue.popleft()
        if x == net.t_prime:
            return True
        for e in adj[x]:
            if _label_consistent(e.label, e.label.edge in g.edges):
                y = e.other(x)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return False


class _BatchEvaluator:
    """Reusable index arrays so that evaluating many inputs avoids Python loops."""

    def __init__(self, net: SwitchingNetwork):
        self.n = net.n
        index = {v: i for i, v in enumerate(net.vertices)}
        self.size = len(index)
        self.u = np.array([index[e.u] for e in net.edges], dtype=np.int64)
        self.v = np.array([index[e.v] for e in net.edges], dtype=np.int64)
        self.lab = np.array([edge_index(e.label.edge, net.n) for e in net.edges], dtype=np.int64)
        self.neg = np.array([e.label.negated for e in net.edges], dtype=bool)
        self.s = index[net.s_prime]
        self.t = index[net.t_prime]

    def accepts(self, bits: int) -> bool:
        present = ((bits >> self.lab) & 1).astype(bool) if len(self.lab) else np.zeros(0, bool)
        keep = present != self.neg
        if not keep.any():
            return False
        m = coo_matrix((np.ones(int(keep.sum()), dtype=np.int8), (self.u[keep], self.v[keep])),
                       shape=(self.size, self.size))
        _, comp = connected_components(m, directed=False)
        return bool(comp[self.s] == comp[self.t])


@dataclass
class VerificationReport:
    verdict: str
    inputs_checked: int
    counterexample: Optional[DigraphInput] = None
    expected: Optional[bool] = None
    actual: Optional[bool] = None

    @property
    def solves(self) -> bool:
        return self.verdict == "solves"

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "inputs_checked": self.inputs_checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
            out["expected"] = self.expected
            out["actual"] = self.actual
        return out


def inputs_by_size(n: int) -> Iterator[int]:
    """All edge bitmasks ordered by (number of edges, mask)."""
    m = n * (n - 1)
    order = sorted(range(1 << m), key=lambda b: (bin(b).count("1"), b))
    return iter(order)


def _check_range(args) -> tuple[int, Optional[int]]:
    net_json, inputs = args
    net = SwitchingNetwork.from_json(net_json)
    ev = _BatchEvaluator(net)
    for i, bits in enumerate(inputs):
        if ev.accepts(bits) != st_reachable_bits(bits, net.n):
            return i + 1, bits
    return len(inputs), None


def _worker_count() -> int:
    raw = os.environ.get("SWNET_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def verify_solves(net: SwitchingNetwork, mode: str = "exhaustive", max_n: int = DEFAULT_MAX_N,
                  workers: Optional[int] = None) -> VerificationReport:
    """Compare the network against the reachability oracle on every input digraph.

    Inputs are visited with fewer edges first, so a reported counterexample
    is one of the smallest.  ``mode="monotone"`` checks only the extreme
    inputs, which decides the same question for monotone networks.
    """
    if mode == "monotone":
        return _verify_monotone(net, max_n)
    if mode != "exhaustive":
        raise ValueError(f"unknown verification mode {mode!r}")
    if net.n > max_n:
        raise CapExceeded(f"exhaustive verification is capped at n={max_n} "
                          f"(2^{max_n * (max_n - 1)} inputs); got n={net.n}")
    order = list(inputs_by_size(net.n))
    workers = workers or _worker_count()
    if workers <= 1 or len(order) < 4096:
        checked, bad = _check_range((net.to_json(), order))
        shards = [(checked, bad)]
        offset_checked = checked
    else:
        step = -(-len(order) // workers)
        chunks = [order[i:i + step] for i in range(0, len(order), step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            shards = list(pool.map(_check_range, [(net.to_json(), c) for c in chunks]))
        offset_checked = 0
        for (checked, bad), chunk in zip(shards, chunks):
            offset_checked += checked
            if bad is not None:
                break
    bad = next((b for _, b in shards if b is not None), None)
    if bad is None:
        return VerificationReport("solves", len(order))
    g = DigraphInput.from_bits(net.n, bad)
    expected = has_path = st_reachable_bits(bad, net.n)
    return VerificationReport("fails", offset_checked, g, expected, not has_path)


MONOTONE_MAX_N = 8


def _simple_paths(n: int) -> Iterator[int]:
    inner = list(range(1, n - 1))
    for r in range(len(inner) + 1):
        for mid in itertools.permutations(inner, r):
            vs = (0,) + mid + (n - 1,)
            yield sum(1 << edge_index(e, n) for e in zip(vs, vs[1:]))


def _cut_complements(n: int) -> Iterator[int]:
    for mask in range(1 << (n - 2)):
        side = {0} | {v for v in range(1, n - 1) if mask >> (v - 1) & 1}
        yield sum(1 << edge_index((u, v), n) for u in range(n) for v in range(n)
                  if u != v and not (u in side and v not in side))


def _verify_monotone(net: SwitchingNetwork, max_n: int) -> VerificationReport:
    # a monotone network solves the problem iff it accepts every simple s-t path
    # and rejects every input that misses all edges leaving some cut
    net.require_monotone()
    cap = max(max_n, MONOTONE_MAX_N)
    if net.n > cap:
        raise CapExceeded(f"monotone verification is capped at n={cap}; got n={net.n}")
    ev = _BatchEvaluator(net)
    checked = 0
    for want, family in ((True, _simple_paths(net.n)), (False, _cut_complements(net.n))):
        for bits in family:
            checked += 1
            if ev.accepts(bits) != want:
                return VerificationReport("fails", checked, DigraphInput.from_bits(net.n, bits), want, not want)
    return VerificationReport("solves", checked)


# ---------------------------------------------------------------------------
# canonical states of knowledge

DEFAULT_MAX_LABELS = 24


def _minimal_add(family: list[int], cand: int) -> bool:
    """Insert ``cand`` into an antichain of bitmasks under inclusion; report change."""
    for m in family:
        if m & ~cand == 0:
            return False
    family[:] = [m for m in family if cand & ~m != 0]
    family.append(cand)
    return True


def canonical_states(net: SwitchingNetwork, max_labels: int = DEFAULT_MAX_LABELS
                     ) -> dict[int, StateOfKnowledge]:
    """For each reachable vertex, the minimal edge sets that let ``s'`` reach it.

    Computed as a fixpoint over antichains of label sets; unreachable vertices
    are left out.
    """
    net.require_monotone()
    labels = sorted(net.labels_used())
    if len(labels) > max_labels:
        raise CapExceeded(f"canonical states are capped at {max_labels} distinct labels; "
                          f"network uses {len(labels)}")
    lab_bit = {e: 1 << edge_index(e, net.n) for e in labels}
    adj = net.adjacency()
    fam: dict[int, list[int]] = {net.s_prime: [0]}
    work = deque([net.s_prime])
    queued = {net.s_prime}
    while work:
        x = work.popleft()
        queued.discard(x)
        for e in adj[x]:
            y = e.other(x)
            bit = lab_bit[e.label.edge]
            target = fam.setdefault(y, [])
            changed = False
            for m in list(fam[x]):
                changed |= _minimal_add(target, m | bit)
            if changed and y not in queued:
                queued.add(y)
                work.append(y)
    return {x: StateOfKnowledge(tuple(KnowledgeSet.from_raw_bits(net.n, m) for m in ms))
            for x, ms in sorted(fam.items()) if ms}


# ---------------------------------------------------------------------------
# chaining copies

def chain_transform(net: SwitchingNetwork, partition: Optional[tuple[Iterable[int], Iterable[int]]] = None
                    ) -> SwitchingNetwork:
    """Chain ``n`` copies of ``net``; copy c's ``t'`` becomes copy c+1's ``s'``.

    With a partition ``(W1, W2)``, every label ``a->b`` with ``a`` in W2 and
    ``b`` in W1 is first swapped for two parallel edges ``s->b`` and ``a->t``.
    """
    net.require_monotone()
    n = net.n
    edges = list(net.edges)
    if partition is not None:
        w1, w2 = set(partition[0]), set(partition[1])
        if 0 not in w1 or n - 1 not in w2 or w1 & w2 or w1 | w2 != set(range(n)):
            raise ValueError("partition must split all vertices with s in W1 and t in W2")
        swapped = []
        for e in edges:
            a, b = e.label.edge
            if a in w2 and b in w1:
                swapped.append(NetEdge(e.u, e.v, Label((0, b))))
                swapped.append(NetEdge(e.u, e.v, Label((a, n - 1))))
            else:
                swapped.append(e)
        edges = swapped
    index = {v: i for i, v in enumerate(net.vertices)}
    size = len(index)
    copies = n

    def ident(c: int, x: int) -> int:
        if x == net.t_prime and c < copies - 1:
            return (c + 1) * size + index[net.s_prime]
        return c * size + index[x]

    vertices = []
    out_edges = []
    for c in range(copies):
        for x in net.vertices:
            if x == net.t_prime and c < copies - 1:
                continue
            vertices.append(c * size + index[x])
        for e in edges:
            out_edges.append(NetEdge(ident(c, e.u), ident(c, e.v), e.label))
    return SwitchingNetwork(n, ident(0, net.s_prime), ident(copies - 1, net.t_prime),
                            tuple(sorted(vertices)), tuple(out_edges))


# ---------------------------------------------------------------------------
# DOT export

def export_dot(net: SwitchingNetwork, name: str = "G", comment: Optional[str] = None) -> str:
    lines = [f"// {comment}"] if comment else []
    lines.append(f"graph {name} {{")
    for x in sorted(net.vertices):
        attrs = ""
        if x == net.s_prime:
            attrs = ' [label="s\'", shape=doublecircle]'
        elif x == net.t_prime:
            attrs = ' [label="t\'", shape=doublecircle]'
        lines.append(f"  {x}{attrs};")
    for e in sorted(net.edges, key=lambda e: (e.u, e.v, e.label)):
        a, b = e.label.edge
        text = f"{vertex_name(a, net.n)}->{vertex_name(b, net.n)}"
        if e.label.negated:
            text = f"!({text})"
        lines.append(f'  {e.u} -- {e.v} [label="{text}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

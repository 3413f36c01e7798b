"""Flows along walks, invariant cuts, barrier mappings and the certificate pipeline.

For a path P split into two edge classes E1/E2, a certificate is a cut
function g that vanishes on every cut whose crossing P-edges mix both classes
and whose pairing with the class-signed flow of any accepting walk is a fixed
nonzero constant.  ``build_gP(k)`` constructs one with all coefficients on
sets of size at most k equal to zero.
"""
from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .fourier import (CutFunction, FourierSpectrum, dot, fourier_coeffs, from_spectrum, popcount,
                      solve_dual_prescription, sok_to_function)
from .graph import Edge, PathSpec, canonical_path, in_cut
from .knowledge import CKLabeling, k_set, subset_network
from .kset import KnowledgeSet, StateOfKnowledge
from .network import CapExceeded, SwitchingNetwork
from .subsetwalk import Walk, build_subset_walk_graph

DEFAULT_MAX_K = 3


# ---------------------------------------------------------------------------
# partitions of a path's edges

@dataclass(frozen=True)
class EdgePartition:
    path: PathSpec
    e1: frozenset
    e2: frozenset

    def __post_init__(self):
        e1, e2 = frozenset(map(tuple, self.e1)), frozenset(map(tuple, self.e2))
        object.__setattr__(self, "e1", e1)
        object.__setattr__(self, "e2", e2)
        if e1 & e2 or e1 | e2 != set(self.path.edges):
            raise ValueError("E1 and E2 must split the path's edges exactly")

    def sign(self, e: Edge) -> int:
        if e in self.e1:
            return 1
        if e in self.e2:
            return -1
        raise KeyError(f"{e} is not an edge of the path")

    def cls(self, e: Edge) -> int:
        return 1 if e in self.e1 else 2

    def to_json(self) -> dict:
        return {"path": list(self.path.vertices), "e1": sorted(map(list, self.e1)),
                "e2": sorted(map(list, self.e2))}


def standard_partition(path: PathSpec) -> EdgePartition:
    """Edges leaving the even positions ``v_0 = s, v_2, ...`` form E1."""
    e1 = [e for i, e in enumerate(path.edges) if i % 2 == 0]
    e2 = [e for i, e in enumerate(path.edges) if i % 2 == 1]
    return EdgePartition(path, frozenset(e1), frozenset(e2))


def cut_class(mask: int, part: EdgePartition) -> int:
    """+1 if every crossing path edge is in E1, -1 if every one is in E2, 0 if mixed."""
    n = part.path.n
    seen = set()
    for u, v in part.path.edges:
        if in_cut(u, mask, n) and not in_cut(v, mask, n):
            seen.add(part.sign((u, v)))
    if seen == {1}:
        return 1
    if seen == {-1}:
        return -1
    return 0


def is_invariant_cut(c, part: EdgePartition) -> bool:
    mask = c.mask if hasattr(c, "mask") else int(c)
    return cut_class(mask, part) != 0


def is_invariant_function(g: CutFunction, part: EdgePartition) -> bool:
    return all(not v or cut_class(c, part) != 0 for c, v in enumerate(g.values))


def z_from_cuts(g: CutFunction, part: EdgePartition) -> Fraction:
    """The constant an invariant g takes against every accepting walk's flow."""
    total = Fraction(0)
    for c, v in enumerate(g.values):
        if v:
            total += v * cut_class(c, part)
    return total / (1 << (g.n - 2))


# ---------------------------------------------------------------------------
# flows along walks

def _state_function(states, v, cache):
    if v not in cache:
        if v not in states:
            raise KeyError(f"no state of knowledge for network vertex {v}")
        cache[v] = sok_to_function(states[v])
    return cache[v]


def edge_contribution(walk: Walk, states: Mapping[int, StateOfKnowledge], e: Edge) -> CutFunction:
    """Half the total change of the state function over the steps labelled ``e``."""
    n = states[walk.vertices[0]].n
    cache: dict = {}
    total = CutFunction.zero(n)
    for a, b, lab in walk.steps():
        if lab == e:
            total = total + _state_function(states, b, cache) - _state_function(states, a, cache)
    return total.scale(Fraction(1, 2))


def partition_flow(walk: Walk, states: Mapping[int, StateOfKnowledge], part: EdgePartition) -> CutFunction:
    n = states[walk.vertices[0]].n
    cache: dict = {}
    total = CutFunction.zero(n)
    for a, b, lab in walk.steps():
        step = _state_function(states, b, cache) - _state_function(states, a, cache)
        total = total + step if part.sign(lab) > 0 else total - step
    return total.scale(Fraction(1, 2))


def state_pairings(states: Mapping[int, StateOfKnowledge], g: CutFunction,
                   vertices: Optional[Iterable[int]] = None) -> dict[int, Fraction]:
    vs = states.keys() if vertices is None else vertices
    return {v: dot(sok_to_function(states[v]), g) for v in vs}


def walk_pairing(walk: Walk, pair: Mapping[int, Fraction], part: EdgePartition) -> Fraction:
    """``partition_flow(walk) . g`` from precomputed ``J_v . g`` values."""
    total = Fraction(0)
    for a, b, lab in walk.steps():
        total += part.sign(lab) * (pair[b] - pair[a])
    return total / 2


def hprime_contribution(h, hedges, e: Edge) -> CutFunction:
    """Half the total knowledge change over the subset-walk moves in ``hedges`` labelled ``e``."""
    from .fourier import ks_to_function
    n = h.knowledge(hedges[0].src).n if hedges else h.members[0][0].n
    total = CutFunction.zero(n)
    for he in hedges:
        if he.label == e:
            total = total + ks_to_function(h.knowledge(he.dst)) - ks_to_function(h.knowledge(he.src))
    return total.scale(Fraction(1, 2))


@dataclass
class Decomposition:
    label: Edge
    walk_part: CutFunction
    path_part: CutFunction
    cycle_parts: list

    @property
    def holds(self) -> bool:
        total = self.path_part
        for c in self.cycle_parts:
            total = total + c
        return total == self.walk_part


def decompose(walk: Walk, states: Mapping[int, StateOfKnowledge], h=None) -> list[Decomposition]:
    """Split each label's walk contribution into the subset-walk path part and its cycle parts."""
    h = build_subset_walk_graph(walk, states) if h is None else h
    out = []
    for e in sorted(set(walk.labels)):
        out.append(Decomposition(e, edge_contribution(walk, states, e), hprime_contribution(h, h.path, e),
                                 [hprime_contribution(h, c, e) for c in h.cycles]))
    return out


# ---------------------------------------------------------------------------
# barriers

def barrier_set(k: int, cap: Optional[int] = None) -> list[KnowledgeSet]:
    """``K_V`` over the ``2**k`` path vertices with ``k+1 <= |V| <= cap`` (default ``2k+1``)."""
    cap = 2 * k + 1 if cap is None else cap
    m = 1 << k
    n = m + 2
    out = []
    for mask in range(1 << m):
        if k + 1 <= popcount(mask) <= cap:
            out.append(k_set(n, [v + 1 for v in range(m) if mask >> v & 1]))
    return out


def barrier_violation(net: SwitchingNetwork, w: Iterable[int], part: EdgePartition) -> Optional[list]:
    """A walk from ``s'`` to ``t'`` on path labels that never switches class at a W vertex.

    Searches over (vertex, class of the entering edge); at a W vertex the
    leaving edge must have the entering class.  Returns the walk as a list of
    (vertex, class) states, or None when W is a barrier.
    """
    w = set(w)
    allowed = set(part.path.edges)
    adj = {v: [] for v in net.vertices}
    for e in net.edges:
        if e.label.edge in allowed:
            c = part.cls(e.label.edge)
            adj[e.u].append((e.v, c))
            adj[e.v].append((e.u, c))
    start = (net.s_prime, 0)
    prev = {start: None}
    queue = deque([start])
    while queue:
        x, c = queue.popleft()
        if x == net.t_prime:
            out = []
            node = (x, c)
            while node is not None:
                out.append(node)
                node = prev[node]
            return out[::-1]
        for y, d in adj[x]:
            if x in w and c and d != c:
                continue
            nxt = (y, d)
            if nxt not in prev:
                prev[nxt] = (x, c)
                queue.append(nxt)
    return None


def is_barrier(net: SwitchingNetwork, w: Iterable[int], part: EdgePartition) -> bool:
    return barrier_violation(net, w, part) is None


def minimize_barrier(net: SwitchingNetwork, w: Iterable[int], part: EdgePartition) -> list[int]:
    """Drop members greedily in id order while the barrier property survives."""
    keep = sorted(set(w))
    for x in list(keep):
        trial = [y for y in keep if y != x]
        if is_barrier(net, trial, part):
            keep = trial
    return keep


@dataclass(frozen=True)
class BMapping:
    values: dict

    def __getitem__(self, v: int) -> tuple[int, int]:
        return self.values[v]

    def target(self, v: int) -> int:
        b1, b2 = self.values[v]
        return b2 - b1

    def switching(self) -> list[int]:
        return sorted(v for v, (b1, b2) in self.values.items() if b1 != b2)


class InvalidBarrier(ValueError):
    pass


def check_bmapping(net: SwitchingNetwork, b: BMapping, part: EdgePartition) -> bool:
    if b[net.s_prime] != (0, 0) or b[net.t_prime] != (1, 1):
        return False
    allowed = set(part.path.edges)
    for e in net.edges:
        if e.label.edge not in allowed:
            continue
        i = part.cls(e.label.edge) - 1
        if b[e.u][i] != b[e.v][i]:
            return False
    return True


def build_barrier_mapping(net: SwitchingNetwork, w: Iterable[int], part: EdgePartition) -> BMapping:
    """Turn a barrier into a 0/1 pair per vertex that only changes along one class per edge."""
    w = [x for x in w if x not in (net.s_prime, net.t_prime)]
    bad = barrier_violation(net, w, part)
    if bad is not None:
        raise InvalidBarrier(f"walk avoids switching at every barrier vertex: {bad}")
    wmin = set(minimize_barrier(net, w, part))
    allowed = set(part.path.edges)

    # same-class adjacency is made transitive: one component id per class
    comp_of: dict[int, dict[int, int]] = {}
    for cls in (1, 2):
        parent = {v: v for v in net.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in net.edges:
            if e.label.edge in allowed and part.cls(e.label.edge) == cls:
                ra, rb = find(e.u), find(e.v)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        comp_of[cls] = {v: find(v) for v in net.vertices}

    def saturated_adjacent(x, y) -> set[int]:
        return {c for c in (1, 2) if x != y and comp_of[c][x] == comp_of[c][y]}

    groups: dict[tuple[int, int], list[int]] = {}
    for v in net.vertices:
        for c in (1, 2):
            groups.setdefault((c, comp_of[c][v]), []).append(v)

    # components of the vertices outside W' under saturated adjacency
    outside = [v for v in net.vertices if v not in wmin]
    parent = {v: v for v in outside}

    def find2(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for members in groups.values():
        rest = [v for v in members if v not in wmin]
        for v in rest[1:]:
            ra, rb = find2(rest[0]), find2(v)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    start, end = find2(net.s_prime), find2(net.t_prime)
    if start == end:
        raise InvalidBarrier("s' and t' are connected outside the minimized barrier")

    values = {}
    for v in outside:
        r = find2(v)
        values[v] = (0, 0) if r == start else (1, 1) if r == end else (0, 0)
    for x in sorted(wmin):
        into_start, into_end = set(), set()
        for members_key, members in groups.items():
            c, _ = members_key
            if x not in members:
                continue
            for y in members:
                if y == x or y in wmin:
                    continue
                r = find2(y)
                if r == start:
                    into_start.add(c)
                elif r == end:
                    into_end.add(c)
        if into_start == {1} and into_end == {2}:
            values[x] = (0, 1)
        elif into_start == {2} and into_end == {1}:
            values[x] = (1, 0)
        else:
            raise InvalidBarrier(f"vertex {x} joins the start side by classes {sorted(into_start)} "
                                 f"and the end side by {sorted(into_end)}")
    b = BMapping(values)
    if not check_bmapping(net, b, part):
        raise InvalidBarrier("constructed mapping breaks the class-constancy conditions")
    return b


# ---------------------------------------------------------------------------
# certificates

@dataclass(frozen=True)
class Certificate:
    k: int
    partition: EdgePartition
    spectrum: FourierSpectrum
    z: Fraction
    moment_floor: int

    @property
    def n(self) -> int:
        return self.spectrum.n

    @property
    def g(self) -> CutFunction:
        return from_spectrum(self.spectrum.coeffs, self.spectrum.n)

    def norm_sq(self) -> Fraction:
        return sum((c * c for c in self.spectrum.coeffs.values()), Fraction(0))

    def scaled(self, c) -> "Certificate":
        c = Fraction(c)
        spec = FourierSpectrum(self.n, {v: c * x for v, x in self.spectrum.coeffs.items()})
        return Certificate(self.k, self.partition, spec, self.z * c, self.moment_floor)

    def transport(self, path: PathSpec) -> "Certificate":
        """Re-express the certificate on another path of the same length.

        Basis sets are relabelled through the injection sending the i-th
        internal vertex of the original path to the i-th of ``path``.
        """
        src = self.partition.path
        if len(path.internal) != len(src.internal):
            raise ValueError("transport needs a path with the same number of internal vertices")
        pos = {v: i for i, v in enumerate(src.internal)}
        coeffs = {}
        for vmask, c in self.spectrum.coeffs.items():
            new = 0
            for v in range(1, src.n - 1):
                if vmask >> (v - 1) & 1:
                    if v not in pos:
                        raise ValueError(f"coefficient on vertex {v} outside the path")
                    new |= 1 << (path.internal[pos[v]] - 1)
            coeffs[new] = c
        e1 = [e for i, e in enumerate(path.edges) if src.edges[i] in self.partition.e1]
        e2 = [e for i, e in enumerate(path.edges) if src.edges[i] in self.partition.e2]
        return Certificate(self.k, EdgePartition(path, frozenset(e1), frozenset(e2)),
                           FourierSpectrum(path.n, coeffs), self.z, self.moment_floor)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "path": list(self.partition.path.vertices),
            "e1": sorted(map(list, self.partition.e1)),
            "e2": sorted(map(list, self.partition.e2)),
            "spectrum": self.spectrum.to_json(),
            "z": {"num": self.z.numerator, "den": self.z.denominator},
            "moment_floor": self.moment_floor,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        spec = FourierSpectrum.from_json(data["spectrum"])
        verts = [int(v) for v in data["path"]]
        path = PathSpec(spec.n, tuple(verts[1:-1]))
        part = EdgePartition(path, frozenset(tuple(e) for e in data["e1"]),
                             frozenset(tuple(e) for e in data["e2"]))
        z = data["z"]
        z = Fraction(int(z["num"]), int(z["den"])) if isinstance(z, dict) else Fraction(z)
        return cls(int(data["k"]), part, spec, z, int(data.get("moment_floor", data["k"])))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def certificate_from_function(g: CutFunction, part: EdgePartition, k: int) -> Certificate:
    return Certificate(k, part, fourier_coeffs(g), z_from_cuts(g, part), k)


def path_network(k: int) -> tuple[SwitchingNetwork, CKLabeling, EdgePartition]:
    """Network over every ``K_V`` for V inside the ``2**k`` path vertices, path labels only."""
    path = canonical_path(1 << k)
    part = standard_partition(path)
    net, lab = subset_network(path.n, list(path.internal), path.edges)
    return net, lab, part


@dataclass
class PipelineTrace:
    net: SwitchingNetwork
    labels: CKLabeling
    barrier: list
    minimized: list
    mapping: BMapping
    targets: dict


def build_gP(k: int, max_k: int = DEFAULT_MAX_K, trace: Optional[dict] = None) -> Certificate:
    """Barrier -> vertex mapping -> prescribed pairings -> g, on the ``2**k``-vertex path."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > max_k:
        raise CapExceeded(f"certificate pipeline capped at k={max_k}; got k={k}")
    net, lab, part = path_network(k)
    n = part.path.n
    m = 1 << k
    w = [v for v in range(1 << m) if k + 1 <= popcount(v) <= 2 * k + 1]
    b = build_barrier_mapping(net, w, part)
    targets = {v: b.target(v) for v in range(1 << m)}
    g = solve_dual_prescription(targets, n)
    cert = certificate_from_function(g, part, k)
    if trace is not None:
        trace["pipeline"] = PipelineTrace(net, lab, w, minimize_barrier(net, w, part), b, targets)
    return cert


# ---------------------------------------------------------------------------
# verification

def path_walks(net: SwitchingNetwork, allowed: Iterable[Edge], limit: int = 200, max_len: int = 40,
               random_walks: int = 20, seed: int = 0, through: Iterable[int] = ()) -> list[Walk]:
    """Simple accepting walks by DFS (up to ``limit``), shortest accepting walks through each
    vertex of ``through``, and seeded random accepting walks."""
    allowed = set(allowed)
    adj: dict[int, list] = {v: [] for v in net.vertices}
    for e in sorted(net.edges, key=lambda e: (e.u, e.v, e.label)):
        if e.label.edge in allowed:
            adj[e.u].append((e.v, e.label.edge))
            if e.u != e.v:
                adj[e.v].append((e.u, e.label.edge))
    out: list[Walk] = []
    stack = [(net.s_prime, [net.s_prime], [])]
    while stack and len(out) < limit:
        x, vs, ls = stack.pop()
        if x == net.t_prime:
            out.append(Walk(tuple(vs), tuple(ls)))
            continue
        if len(ls) >= max_len:
            continue
        for y, lab in reversed(adj[x]):
            if y not in vs:
                stack.append((y, vs + [y], ls + [lab]))
    if through:
        out.extend(walks_through(net, adj, through))
    rng = random.Random(seed)
    for _ in range(random_walks):
        vs, ls = [net.s_prime], []
        for _ in range(50 * max(1, len(net.vertices))):
            if vs[-1] == net.t_prime or not adj[vs[-1]]:
                break
            y, lab = rng.choice(adj[vs[-1]])
            vs.append(y)
            ls.append(lab)
        if vs[-1] == net.t_prime:
            out.append(Walk(tuple(vs), tuple(ls)))
    return out


def _bfs_tree(adj, root):
    prev = {root: None}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, lab in adj[x]:
            if y not in prev:
                prev[y] = (x, lab)
                queue.append(y)
    return prev


def walks_through(net: SwitchingNetwork, adj, vertices: Iterable[int]) -> list[Walk]:
    """For each vertex, a shortest ``s'`` -> vertex -> ``t'`` walk when one exists."""
    from_s = _bfs_tree(adj, net.s_prime)
    from_t = _bfs_tree(adj, net.t_prime)
    out = []
    for v in vertices:
        if v not in from_s or v not in from_t:
            continue
        head_v, head_l = [v], []
        x = v
        while from_s[x] is not None:
            x, lab = from_s[x]
            head_v.append(x)
            head_l.append(lab)
        head_v.reverse()
        head_l.reverse()
        x = v
        while from_t[x] is not None:
            y, lab = from_t[x]
            head_v.append(y)
            head_l.append(lab)
            x = y
        out.append(Walk(tuple(head_v), tuple(head_l)))
    return out


@dataclass
class CertificateReport:
    ok: bool
    failures: list = field(default_factory=list)
    invariant: bool = True
    moment_ok: bool = True
    z_expected: Optional[Fraction] = None
    z_observed: set = field(default_factory=set)
    walks_checked: int = 0
    cycles_checked: int = 0
    scale_note: Optional[str] = None

    def to_json(self) -> dict:
        fmt = lambda q: str(q)  # noqa: E731
        return {"ok": self.ok, "failures": self.failures, "invariant": self.invariant,
                "moment_ok": self.moment_ok,
                "z_expected": None if self.z_expected is None else fmt(self.z_expected),
                "z_observed": sorted(map(fmt, self.z_observed)),
                "walks_checked": self.walks_checked, "cycles_checked": self.cycles_checked,
                "scale_note": self.scale_note}


def verify_certificate(cert: Certificate, testnets: Sequence[tuple[SwitchingNetwork, Mapping]] = (),
                       seed: int = 0, walk_limit: int = 100, cycle_walks: int = 10) -> CertificateReport:
    rep = CertificateReport(ok=True)
    g = cert.g
    part = cert.partition
    rep.invariant = is_invariant_function(g, part)
    if not rep.invariant:
        rep.failures.append("invariance: g is nonzero on a cut crossed by both edge classes")
    rep.moment_ok = cert.spectrum.low_degree_zero(cert.moment_floor)
    if not rep.moment_ok:
        rep.failures.append(f"moment floor: a coefficient on a set of size <= {cert.moment_floor} is nonzero")
    z = z_from_cuts(g, part)
    rep.z_expected = z
    if z != cert.z:
        rep.scale_note = f"recorded z={cert.z} but g pairs to {z}"
    for idx, (net, states) in enumerate(testnets):
        if net.n != cert.n:
            c = cert.transport(part.path.with_n(net.n))
            gg, pp = c.g, c.partition
        else:
            gg, pp = g, part
        walks = path_walks(net, pp.path.edges, limit=walk_limit, seed=seed + idx,
                           through=sorted(v for v in states if len(states[v]) > 1))
        pair = state_pairings(states, gg, {v for w in walks for v in w.vertices})
        for w in walks:
            val = walk_pairing(w, pair, pp)
            rep.z_observed.add(val)
            rep.walks_checked += 1
            if val != z:
                rep.failures.append(f"walk constancy: net {idx} walk {list(w.vertices)} pairs to {val}, not {z}")
                break
        # every walk visiting a multi-member state, plus a few others
        cyc_walks = walks[:cycle_walks] + [w for w in walks[cycle_walks:]
                                           if any(len(states[v]) > 1 for v in w.vertices)]
        for w in cyc_walks:
            h = build_subset_walk_graph(w, states)
            for cyc in h.cycles:
                val = Fraction(0)
                for he in cyc:
                    val += pp.sign(he.label) * (dot(_union_function(h, he.dst), gg)
                                                - dot(_union_function(h, he.src), gg))
                rep.cycles_checked += 1
                if val != 0:
                    rep.failures.append(f"cycle: net {idx} subset-walk cycle pairs to {val / 2}")
                    break
    rep.ok = not rep.failures
    return rep


def _union_function(h, node) -> CutFunction:
    from .fourier import ks_to_function
    return ks_to_function(h.knowledge(node))


def ck_states(lab: CKLabeling) -> dict[int, StateOfKnowledge]:
    """Single-member states of knowledge from a certain-knowledge labelling."""
    return {v: StateOfKnowledge.single(k) for v, k in lab.labels.items()}

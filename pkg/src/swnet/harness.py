"""Path and partition families, barrier checks, bound estimates and size tables."""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Iterable, Mapping, Optional, Sequence

from .certificates import (Certificate, build_barrier_mapping, build_gP, is_barrier, path_network,
                           standard_partition, z_from_cuts)
from .fourier import (CutFunction, FourierSpectrum, dot, explicit_g, fourier_coeffs, popcount,
                      sok_to_function)
from .graph import PathSpec
from .knowledge import savitch_knowledge_sets, subset_network
from .kset import KnowledgeSet, StateOfKnowledge
from .network import CapExceeded, Label, NetEdge, SwitchingNetwork

DEFAULT_TABLE_K = 3


# ---------------------------------------------------------------------------
# path families

def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, isqrt(p) + 1))


@dataclass(frozen=True)
class PathFamily:
    n: int
    paths: tuple[PathSpec, ...]
    max_shared: int

    def __len__(self):
        return len(self.paths)

    def worst_overlap(self) -> int:
        worst = 0
        for a, b in combinations(self.paths, 2):
            worst = max(worst, len(set(a.internal) & set(b.internal)))
        return worst


def polynomial_path_family(p: int, k: int) -> PathFamily:
    """One path per polynomial f of degree <= k over Z_p.

    The path for f visits ``p*(i-1) + f(i) + 1`` for ``i = 1 .. 2**k``; two
    distinct polynomials agree on at most k of those points, so two paths
    share at most k internal vertices.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    length = 1 << k
    if p <= length:
        raise ValueError(f"need p > 2**k = {length} so that the evaluation points are distinct mod p")
    n = p * length + 2
    paths = []
    for coeffs in _all_coeffs(p, k + 1):
        verts = []
        for i in range(1, length + 1):
            val = sum(c * pow(i, j, p) for j, c in enumerate(coeffs)) % p
            verts.append(p * (i - 1) + val + 1)
        paths.append(PathSpec(n, tuple(verts)))
    return PathFamily(n, tuple(paths), k)


def _all_coeffs(p: int, count: int):
    if count == 0:
        yield ()
        return
    for rest in _all_coeffs(p, count - 1):
        for c in range(p):
            yield rest + (c,)


# ---------------------------------------------------------------------------
# partition families

def greedy_code(m: int, d: int) -> list[int]:
    """Lexicographic greedy code: scan words upward, keep those at distance >= d from all kept."""
    if not 1 <= d <= m:
        raise ValueError("need 1 <= d <= m")
    words: list[int] = []
    for w in range(1 << m):
        if all(popcount(w ^ x) >= d for x in words):
            words.append(w)
    return words


def partition_code_family(m: int, d: int) -> list[tuple[frozenset, frozenset]]:
    """Vertex partitions of an (m+2)-vertex graph from a greedy code; bit j-1 set puts v_j in W2."""
    n = m + 2
    out = []
    for w in greedy_code(m, d):
        w2 = frozenset([v for v in range(1, m + 1) if w >> (v - 1) & 1] + [n - 1])
        w1 = frozenset(set(range(n)) - w2)
        out.append((w1, w2))
    return out


def partition_path(w1: Iterable[int], w2: Iterable[int], n: int) -> PathSpec:
    """``s``, then the internal W1 vertices, then the internal W2 vertices, then ``t``."""
    a = sorted(v for v in w1 if v != 0)
    b = sorted(v for v in w2 if v != n - 1)
    return PathSpec(n, tuple(a + b))


def partition_certificate(w1: Iterable[int], w2: Iterable[int], k: int) -> Certificate:
    """Certificate for the path through W1 then W2, built from closed-form duals.

    The barrier is every ``K_I`` with ``k+1 <= |I| <= 2k+1`` in the network over
    all ``K_I``; the resulting 0/1 mapping prescribes ``g . K_I`` and g is the
    matching combination of the closed-form duals.
    """
    w1, w2 = frozenset(w1), frozenset(w2)
    n = len(w1) + len(w2)
    path = partition_path(w1, w2, n)
    part = standard_partition(path)
    pool = list(range(1, n - 1))
    w2_inner = [v for v in w2 if v != n - 1]
    net, _ = subset_network(n, pool, path.edges, w2_inner)
    w = [mask for mask in range(1 << len(pool)) if k + 1 <= popcount(mask) <= 2 * k + 1]
    b = build_barrier_mapping(net, w, part)
    total = CutFunction.zero(n)
    for mask in range(1 << len(pool)):
        t = b.target(mask)
        if t:
            total = total + explicit_g(mask, w1, w2, n).scale(t)
    return Certificate(k, part, fourier_coeffs(total), z_from_cuts(total, part), k)


# ---------------------------------------------------------------------------
# barriers on the network over the K_V

def verify_barrier(k: int, w: Iterable[KnowledgeSet], max_k: int = 2) -> bool:
    """True when every accepting walk on path labels switches class at some member of ``w``."""
    if k > max_k:
        raise CapExceeded(f"barrier verification capped at k={max_k}; got k={k}")
    net, lab, part = path_network(k)
    ids = {kset: v for v, kset in lab.labels.items()}
    chosen = []
    for kset in w:
        if kset not in ids:
            raise ValueError(f"{kset} is not a vertex of the network")
        chosen.append(ids[kset])
    return is_barrier(net, chosen, part)


# ---------------------------------------------------------------------------
# bounds

def spectrum_dot(a: FourierSpectrum, b: FourierSpectrum) -> Fraction:
    if a.n != b.n:
        raise ValueError("spectra over different n")
    return sum((c * b[v] for v, c in a.coeffs.items()), Fraction(0))


class NotOrthogonal(ValueError):
    pass


@dataclass
class BoundReport:
    family: str
    K: int
    M_sq: Fraction
    bound_floor: int
    networks: list = field(default_factory=list)  # (name, vertex count, sum |J.g|, z, holds)

    @property
    def M(self) -> Optional[Fraction]:
        """M itself when it is rational, else None."""
        num, den = self.M_sq.numerator, self.M_sq.denominator
        rn, rd = isqrt(num), isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
        return None

    def rows(self) -> list[dict]:
        m = self.M
        base = {"family": self.family, "K": self.K,
                "M_num": "" if m is None else m.numerator, "M_den": "" if m is None else m.denominator,
                "M_sq_num": self.M_sq.numerator, "M_sq_den": self.M_sq.denominator,
                "bound_floor": self.bound_floor}
        if not self.networks:
            return [dict(base, network="", sum_abs_dot="")]
        return [dict(base, network=name, sum_abs_dot=str(s)) for name, _, s, _, _ in self.networks]

    def to_csv(self, extra: Optional[dict] = None) -> str:
        extra = extra or {}
        cols = ["family", "K", "M_num", "M_den", "bound_floor", "network", "sum_abs_dot",
                "M_sq_num", "M_sq_den"] + list(extra)
        buf = io.StringIO()
        wr = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        wr.writeheader()
        for r in self.rows():
            wr.writerow(dict(r, **extra))
        return buf.getvalue()

    def to_json(self) -> dict:
        return {"rows": self.rows(),
                "networks": [{"network": name, "vertices": size, "sum_abs_dot": str(s), "z": str(z),
                              "meets_floor": ok, "bound_ok": self.bound_floor <= size}
                             for name, size, s, z, ok in self.networks]}


def lower_bound_estimate(certs: Sequence[Certificate],
                         nets: Sequence[tuple[str, SwitchingNetwork, Mapping[int, StateOfKnowledge]]] = (),
                         family: str = "") -> BoundReport:
    """K orthogonal certificates each normalised to ``M >= min z/|g|`` give at least ``M*sqrt(K)`` vertices."""
    if not certs:
        raise ValueError("need at least one certificate")
    n = certs[0].n
    for c in certs:
        if c.n != n:
            raise ValueError("certificates must live on the same vertex set")
    for (i, a), (j, b) in combinations(enumerate(certs), 2):
        d = spectrum_dot(a.spectrum, b.spectrum)
        if d:
            raise NotOrthogonal(f"certificates {i} and {j} have dot {d}")
    m_sq = min(c.z * c.z / c.norm_sq() for c in certs)
    k = len(certs)
    val = m_sq * k
    bound = isqrt(val.numerator // val.denominator)
    rep = BoundReport(family, k, m_sq, bound)
    for name, net, states in nets:
        if net.n < n:
            raise ValueError(f"network {name} has n={net.n}; the family needs n >= {n}")
        worst = None
        for c in certs:
            cc = c if net.n == c.n else c.transport(c.partition.path.with_n(net.n))
            g = cc.g
            s = sum((abs(dot(sok_to_function(states[v]), g)) for v in states), Fraction(0))
            ratio = s / abs(cc.z) if cc.z else None
            if worst is None or (ratio is not None and ratio < worst[0]):
                worst = (ratio, s, cc.z)
        ratio, s, z = worst
        rep.networks.append((name, net.size, s, z, ratio is not None and ratio >= 1))
    return rep


def family_certificates(p: int, k: int) -> tuple[PathFamily, list[Certificate]]:
    """``build_gP(k)`` carried onto every path of the polynomial family."""
    fam = polynomial_path_family(p, k)
    base = build_gP(k)
    return fam, [base.transport(path) for path in fam.paths]


# ---------------------------------------------------------------------------
# size growth

@dataclass(frozen=True)
class SizeRow:
    k: int
    N: int
    vertices: int
    ceiling: int

    @property
    def ok(self) -> bool:
        return self.vertices <= self.ceiling


def savitch_size_table(k_max: int, cap: int = DEFAULT_TABLE_K) -> list[SizeRow]:
    if k_max > cap:
        raise CapExceeded(f"size table capped at k={cap}; got k={k_max}")
    rows = []
    for k in range(k_max + 1):
        n = (1 << k) + 2
        count = len(savitch_knowledge_sets(n))
        rows.append(SizeRow(k, n, count, n ** (3 * (k + 1))))
    return rows


# ---------------------------------------------------------------------------
# networks with multi-member states, for corroboration

def state_network(k: int, extra: int, seed: int = 0, members: tuple[int, int] = (2, 3)
                  ) -> tuple[SwitchingNetwork, dict]:
    """The network over the ``K_V`` plus ``extra`` vertices carrying random multi-member states.

    An edge joins two vertices for a path label exactly when the step between
    their states is valid, so the given states are a valid labelling and the
    network only accepts inputs containing an s-t path.
    """
    from .certificates import path_network
    from .kset import sok_step_valid

    base, lab, part = path_network(k)
    n = part.path.n
    m = 1 << k
    rng = random.Random(seed)
    states = {v: StateOfKnowledge.single(kset) for v, kset in lab.labels.items()}
    next_id = max(base.vertices) + 1
    new_ids = []
    seen = set(states.values())
    attempts = 0
    while len(new_ids) < extra and attempts < 50 * (extra + 1):
        attempts += 1
        count = rng.randint(*members)
        sets = []
        for _ in range(count):
            size = rng.randint(1, max(1, m - 1))
            sets.append(frozenset(rng.sample(range(1, m + 1), size)))
        j = StateOfKnowledge(tuple(KnowledgeSet.of(n, [(0, v) for v in sorted(vs)]) for vs in sets))
        if len(j) < 2 or j in seen:
            continue
        seen.add(j)
        states[next_id] = j
        new_ids.append(next_id)
        next_id += 1
    edges = list(base.edges)
    everyone = sorted(states)
    for x in new_ids:
        for y in everyone:
            if y == x or (y in new_ids and y < x):
                continue
            for e in part.path.edges:
                if sok_step_valid(states[x], states[y], e):
                    edges.append(NetEdge(min(x, y), max(x, y), Label(e)))
    net = SwitchingNetwork(n, base.s_prime, base.t_prime, tuple(everyone), tuple(edges))
    return net, states

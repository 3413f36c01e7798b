"""Exact functions on s-t cuts and their expansion in the parity basis ``e_V``.

With ``m = n - 2`` internal vertices there are ``2**m`` cuts; a cut function is
a dense vector of Fractions indexed by cut mask.  The dot product is the
average ``2**-m * sum f(C) g(C)``, under which the ``e_V`` are orthonormal and
the coefficient of ``e_V`` is ``f . e_V``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping, Optional, Union

import numpy as np

from .graph import check_n, vertex_set_mask
from .kset import KnowledgeSet, StateOfKnowledge

Number = Union[int, Fraction]


class DimensionMismatch(ValueError):
    pass


def _internal(n: int) -> int:
    check_n(n)
    return n - 2


def popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class CutFunction:
    n: int
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != 1 << _internal(self.n):
            raise DimensionMismatch(f"need {1 << (self.n - 2)} values for n={self.n}, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, n: int) -> "CutFunction":
        return cls(n, (Fraction(0),) * (1 << _internal(n)))

    @classmethod
    def constant(cls, n: int, c: Number) -> "CutFunction":
        return cls(n, (Fraction(c),) * (1 << _internal(n)))

    def __getitem__(self, mask: int) -> Fraction:
        return self.values[mask]

    def __len__(self):
        return len(self.values)

    def _check(self, other: "CutFunction"):
        if self.n != other.n:
            raise DimensionMismatch(f"cut functions over n={self.n} and n={other.n}")

    def __add__(self, other: "CutFunction") -> "CutFunction":
        self._check(other)
        return CutFunction(self.n, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "CutFunction") -> "CutFunction":
        self._check(other)
        return CutFunction(self.n, tuple(a - b for a, b in zip(self.values, other.values)))

    def __neg__(self) -> "CutFunction":
        return CutFunction(self.n, tuple(-a for a in self.values))

    def scale(self, c: Number) -> "CutFunction":
        c = Fraction(c)
        return CutFunction(self.n, tuple(c * a for a in self.values))

    __rmul__ = scale

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.values) if v]


def dot(f: CutFunction, g: CutFunction) -> Fraction:
    f._check(g)
    total = sum((a * b for a, b in zip(f.values, g.values) if a and b), Fraction(0))
    return total / (1 << (f.n - 2))


def basis_e(vertices: Iterable[int], n: int) -> CutFunction:
    vs = list(vertices)
    if any(v == 0 or v == n - 1 for v in vs):
        raise ValueError("basis sets may not contain s or t")
    if any(not 0 < v < n - 1 for v in vs):
        raise ValueError(f"vertex out of range for n={n}")
    return basis_e_mask(vertex_set_mask(vs), n)


def basis_e_mask(vmask: int, n: int) -> CutFunction:
    m = _internal(n)
    return CutFunction(n, tuple(-1 if popcount(vmask & c) & 1 else 1 for c in range(1 << m)))


def _wht_int(vec: list[int]) -> list[int]:
    """Unnormalized Walsh-Hadamard transform of an integer vector."""
    a = list(vec)
    h = 1
    size = len(a)
    while h < size:
        for i in range(0, size, h * 2):
            for j in range(i, i + h):
                x, y = a[j], a[j + h]
                a[j], a[j + h] = x + y, x - y
        h *= 2
    return a


def _to_ints(values: Iterable[Fraction]) -> tuple[list[int], int]:
    values = list(values)
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in values], den


@dataclass(frozen=True)
class FourierSpectrum:
    n: int
    coeffs: Mapping[int, Fraction]

    def __post_init__(self):
        clean = {int(k): Fraction(v) for k, v in sorted(self.coeffs.items()) if v}
        m = _internal(self.n)
        for k in clean:
            if not 0 <= k < 1 << m:
                raise ValueError(f"basis set mask {k} out of range for n={self.n}")
        object.__setattr__(self, "coeffs", clean)

    def __getitem__(self, vmask: int) -> Fraction:
        return self.coeffs.get(vmask, Fraction(0))

    def low_degree_zero(self, k: int) -> bool:
        """True when every coefficient on a set of size at most k vanishes."""
        return all(popcount(v) > k for v in self.coeffs)

    def to_json(self) -> dict:
        return {"n": self.n, "coeffs": [{"set": v, "num": c.numerator, "den": c.denominator}
                                        for v, c in self.coeffs.items()]}

    @classmethod
    def from_json(cls, data: dict) -> "FourierSpectrum":
        return cls(int(data["n"]), {int(d["set"]): Fraction(int(d["num"]), int(d["den"]))
                                    for d in data["coeffs"]})

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def fourier_coeffs(f: CutFunction) -> FourierSpectrum:
    ints, den = _to_ints(f.values)
    raw = _wht_int(ints)
    scale = den << (f.n - 2)
    return FourierSpectrum(f.n, {v: Fraction(x, scale) for v, x in enumerate(raw) if x})


def inverse_fourier(spec: FourierSpectrum) -> CutFunction:
    m = _internal(spec.n)
    dense = [Fraction(0)] * (1 << m)
    for v, c in spec.coeffs.items():
        dense[v] = c
    ints, den = _to_ints(dense)
    raw = _wht_int(ints)
    return CutFunction(spec.n, tuple(Fraction(x, den) for x in raw))


def from_spectrum(coeffs: Mapping[int, Number], n: int) -> CutFunction:
    return inverse_fourier(FourierSpectrum(n, dict(coeffs)))


# ---------------------------------------------------------------------------
# indicator functions of knowledge

@lru_cache(maxsize=32)
def _inside_table(n: int) -> np.ndarray:
    """Row v: for every cut mask, whether vertex v lies on the source side."""
    m = _internal(n)
    masks = np.arange(1 << m, dtype=np.int64)
    rows = np.zeros((n, 1 << m), dtype=bool)
    rows[0] = True
    for v in range(1, n - 1):
        rows[v] = (masks >> (v - 1)) & 1
    return rows


def _crosses(k: KnowledgeSet, n: int) -> np.ndarray:
    m = _internal(n)
    if k.is_complete:
        return np.ones(1 << m, dtype=bool)
    inside = _inside_table(n)
    out = np.zeros(1 << m, dtype=bool)
    for u, v in k.edges:
        out |= inside[u] & ~inside[v]
    return out


def _pm(flags: np.ndarray, n: int) -> CutFunction:
    return CutFunction(n, tuple(1 if x else -1 for x in flags.tolist()))


def ks_to_function(k: KnowledgeSet, n: Optional[int] = None) -> CutFunction:
    """+1 on cuts that some edge of ``k`` crosses, -1 elsewhere."""
    n = k.n if n is None else n
    if n != k.n:
        raise DimensionMismatch(f"knowledge set over n={k.n}, asked for n={n}")
    return _pm(_crosses(k, n), n)


def sok_to_function(j: StateOfKnowledge, n: Optional[int] = None) -> CutFunction:
    """+1 on cuts crossed by every member of ``j``, -1 elsewhere."""
    n = j.n if n is None else n
    flags = np.ones(1 << _internal(n), dtype=bool)
    for k in j:
        if k.n != n:
            raise DimensionMismatch(f"knowledge set over n={k.n}, asked for n={n}")
        flags &= _crosses(k, n)
    return _pm(flags, n)


# ---------------------------------------------------------------------------
# prescribing the pairings with the sets K_V = {s -> v : v in V}

def source_set(vmask: int, n: int) -> KnowledgeSet:
    from .graph import mask_vertices
    return KnowledgeSet.of(n, [(0, v) for v in mask_vertices(vmask)])


def pairing_entry(vp: int, v: int, n: int) -> Fraction:
    """``e_{V'} . K_V`` for the source set ``K_V``.

    ``K_V`` is -1 exactly on cuts containing V, so the average factorises over
    the coordinates outside V and vanishes unless ``V'`` is inside ``V``.
    """
    if vp & ~v:
        return Fraction(0)
    sign = -1 if popcount(vp) & 1 else 1
    val = -Fraction(2 * sign, 1 << popcount(v))
    if vp == 0:
        val += 1
    return val


def _check_targets(targets: Mapping[int, Number], n: int) -> list[Fraction]:
    m = _internal(n)
    out = []
    for v in range(1 << m):
        if v not in targets:
            raise KeyError(f"missing target for vertex set mask {v}")
        out.append(Fraction(targets[v]))
    return out


def _solve_triangular(a: list[Fraction], n: int) -> dict[int, Fraction]:
    m = n - 2
    order = sorted(range(1 << m), key=lambda v: (popcount(v), v))
    coef: dict[int, Fraction] = {}
    for v in order:
        acc = a[v]
        # proper subsets of v were handled earlier in the order
        sub = (v - 1) & v
        while True:
            if sub != v:
                c = coef.get(sub)
                if c:
                    acc -= c * pairing_entry(sub, v, n)
            if sub == 0:
                break
            sub = (sub - 1) & v
        coef[v] = acc / pairing_entry(v, v, n)
    return coef


def _solve_mobius(a: list[Fraction], n: int) -> dict[int, Fraction]:
    # g.K_V = c0 - 2^{1-|V|} * sum_{V' in V} (-1)^{|V'|} c_{V'}; invert the subset sum
    m = n - 2
    c0 = -a[0]
    s = [(c0 - a[v]) * Fraction(1 << popcount(v), 2) if v else c0 for v in range(1 << m)]
    # Moebius inversion over the subset lattice
    for i in range(m):
        bit = 1 << i
        for v in range(1 << m):
            if v & bit:
                s[v] -= s[v ^ bit]
    return {v: (-x if popcount(v) & 1 else x) for v, x in enumerate(s)}


def solve_dual_prescription(targets: Mapping[int, Number], n: int, method: str = "auto") -> CutFunction:
    """The unique g with ``g . K_V = targets[V]`` for every internal vertex set V."""
    a = _check_targets(targets, n)
    if method == "auto":
        method = "triangular" if n - 2 <= 10 else "mobius"
    if method == "triangular":
        coef = _solve_triangular(a, n)
    elif method == "mobius":
        coef = _solve_mobius(a, n)
    else:
        raise ValueError(f"unknown method {method!r}")
    return from_spectrum(coef, n)


# ---------------------------------------------------------------------------
# closed-form duals for a vertex partition

def _check_partition(w1: Iterable[int], w2: Iterable[int], n: int) -> tuple[int, int]:
    w1, w2 = set(w1), set(w2)
    if 0 not in w1 or n - 1 not in w2:
        raise ValueError("partition needs s in W1 and t in W2")
    if w1 & w2 or w1 | w2 != set(range(n)):
        raise ValueError("W1 and W2 must partition the vertices")
    return (vertex_set_mask(v for v in w1 if v != 0),
            vertex_set_mask(v for v in w2 if v != n - 1))


def partition_set(imask: int, w2mask: int, n: int) -> KnowledgeSet:
    """``K_I``: ``s -> v`` for v in I on the source part, ``w -> t`` for w in I on the sink part."""
    from .graph import mask_vertices
    edges = [((v, n - 1) if w2mask >> (v - 1) & 1 else (0, v)) for v in mask_vertices(imask)]
    return KnowledgeSet.of(n, edges)


def explicit_g(imask: int, w1: Iterable[int], w2: Iterable[int], n: int) -> CutFunction:
    """Closed-form dual to the sets ``K_I`` of a vertex partition.

    For nonempty I the value at C is zero when some internal vertex outside I
    sits in ``W1 & C`` or in ``W2 - C``, and otherwise
    ``2**(n-3) * (-1)**(1 + |I & W1 - C| + |I & W2 & C|)``.  For empty I the
    function is ``-2**(n-3)`` on the two cuts whose internal part is W1 or is
    W2, and zero elsewhere.
    """
    w1m, w2m = _check_partition(w1, w2, n)
    m = _internal(n)
    full = (1 << m) - 1
    if imask & ~full:
        raise ValueError("I must consist of internal vertices")
    big = Fraction(2) ** (n - 3)
    vals = [Fraction(0)] * (1 << m)
    if imask == 0:
        vals[w1m] -= big
        vals[w2m] -= big
        return CutFunction(n, tuple(vals))
    rest = full & ~imask
    for c in range(1 << m):
        if rest & ((w1m & c) | (w2m & ~c)):
            continue
        parity = 1 + popcount(imask & w1m & ~c) + popcount(imask & w2m & c)
        vals[c] = -big if parity & 1 else big
    return CutFunction(n, tuple(vals))

"""Chermak-Delgado measure and lattice.

The search space is the bicentralizer family.  For any subgroup H,
C(C(H)) contains H and has the same centralizer, so its measure is at least
m(H); hence the maximum over the family is m*, and every CD member (being
equal to its own bicentralizer) lies in the family.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

import numpy as np

from . import bitset
from .bilinear import BilinearModel
from .errors import (
    HypothesisViolated,
    NotAMember,
    NotComparable,
    NotQuasiAntichain,
    PrimeNotDividing,
    RadicalNotTrivial,
    WidthTooSmall,
)
from .gfp import prime_factors, prime_power_exponent
from .groups import Class2Data, from_class2_data
from .lattice import FiniteLattice, ShapeReport, classify_shape
from .subgroups import (
    FAMILY_CAP,
    Subgroup,
    bicentralizer_family,
    centralizer,
    commutators_within,
    element_centralizers,
    generated_subgroup,
    setwise_product,
    small_generating_set,
)


@dataclass(frozen=True)
class MeasureValue:
    """Exact |H| * |C(H)|; on the fast path also the two p-exponents."""

    value: int
    exponents: tuple[int, int] | None = None

    def __int__(self):
        return self.value

    def __str__(self):
        return str(self.value)


def measure(G, H: Subgroup) -> MeasureValue:
    C = centralizer(G, H)
    return _measure_value(G, H.order, C.order)


def _measure_value(G, h: int, c: int) -> MeasureValue:
    if isinstance(G, BilinearModel):
        return MeasureValue(h * c, (prime_power_exponent(h, G.p), prime_power_exponent(c, G.p)))
    return MeasureValue(h * c)


def _family_centralizer(G):
    """bits -> C(bits) for family members."""
    if isinstance(G, BilinearModel):
        return G.fast_centralizer_bits
    ids, cents, _ = element_centralizers(G)
    full = G.full_bits

    def cent(bits):
        acc = full
        for k in np.unique(ids[bitset.to_indices(bits, G.size)]):
            acc &= cents[k]
        return acc

    return cent


@dataclass
class CDLattice:
    group: object
    members: list[Subgroup]
    m_star: MeasureValue
    duality: list[int]
    lattice: FiniteLattice = field(repr=False)

    @property
    def covers(self) -> list[tuple[int, int]]:
        return self.lattice.covers

    @property
    def top(self) -> int:
        return self.lattice.top

    @property
    def bottom(self) -> int:
        return self.lattice.bottom

    def __len__(self):
        return len(self.members)

    def index(self, H: Subgroup) -> int:
        for k, M in enumerate(self.members):
            if M.bits == H.bits and M.ambient is H.ambient:
                return k
        raise NotAMember(f"{H!r} is not a member of this CD lattice")

    def contains(self, H: Subgroup) -> bool:
        try:
            self.index(H)
        except NotAMember:
            return False
        return True

    def abelian_flags(self) -> list[bool]:
        return [bitset.is_subset(M.bits, self.members[self.duality[k]].bits)
                for k, M in enumerate(self.members)]

    def orders(self) -> list[int]:
        return [M.order for M in self.members]

    def shape(self) -> ShapeReport:
        return classify_shape(self.lattice, self.orders(), self.abelian_flags(), self.duality)

    @property
    def is_fast(self) -> bool:
        return isinstance(self.group, BilinearModel)


def _build(G, pairs: list[tuple[Subgroup, int]]) -> CDLattice:
    m_star = max(v for _, v in pairs)
    members = sorted((H for H, v in pairs if v == m_star), key=Subgroup.sort_key)
    pos = {H.bits: k for k, H in enumerate(members)}
    cent = _family_centralizer(G)
    duality = []
    for H in members:
        c = cent(H.bits)
        if c not in pos:
            raise HypothesisViolated("centralizer of a CD member is not a member")
        duality.append(pos[c])
    C0 = Subgroup(G, cent(members[0].bits))
    value = _measure_value(G, members[0].order, C0.order)
    lat = FiniteLattice.from_bitsets([H.bits for H in members])
    return CDLattice(G, members, value, duality, lat)


def cd_lattice(G, family_cap: int = FAMILY_CAP) -> CDLattice:
    """CD(G) as the argmax of the measure over the bicentralizer family."""
    if isinstance(G, BilinearModel):
        return _cd_bilinear(G, family_cap)
    fam = bicentralizer_family(G, family_cap)
    cent = _family_centralizer(G)
    pairs = [(H, H.order * G.order_of(cent(H.bits))) for H in fam.members]
    return _build(G, pairs)


def _cd_bilinear(model: BilinearModel, family_cap: int) -> CDLattice:
    # A CD member V and its dual V^perp have dimensions summing to the measure
    # exponent, so one of them has dimension >= half of it, and the measure
    # exponent is at least d (the whole group).  Search only family members of
    # at least that dimension, then add duals.
    min_dim = -(-model.d // 2)
    cent = model.fast_centralizer_bits
    cands = model.large_closed_subspaces(min_dim, family_cap)
    scored = [(V, cent(V)) for V in cands]
    f = [model.dim_of(V) + model.dim_of(C) for V, C in scored]
    best = max(f)
    chosen = set()
    for (V, C), val in zip(scored, f):
        if val == best:
            chosen.update((V, C))
    pe = model.p**model.e
    pairs = [(Subgroup(model, V), pe * pe * model.p**best) for V in chosen]
    return _build(model, pairs)


def cd_lattice_fast(data: Class2Data, fallback: bool = True, family_cap: int = FAMILY_CAP) -> CDLattice:
    """CD lattice from Class2Data through subspace arithmetic.

    Falls back to the generic path on the expanded group when the radical of
    the commutator form is nontrivial (``fallback=False`` re-raises instead).
    """
    try:
        model = BilinearModel(data)
    except RadicalNotTrivial:
        if not fallback:
            raise
        return cd_lattice(from_class2_data(data), family_cap)
    return cd_lattice(model, family_cap)


def cd_from_subgroups(G, subgroups: list[Subgroup]) -> list[int]:
    """Bitsets of the measure-maximal subgroups in ``subgroups`` (oracle route)."""
    vals = [H.order * centralizer(G, H).order for H in subgroups]
    best = max(vals)
    return sorted(H.bits for H, v in zip(subgroups, vals) if v == best)


def duality_map(L: CDLattice, H: Subgroup) -> Subgroup:
    return L.members[L.duality[L.index(H)]]


# ---------------------------------------------------------------------------
# Intervals
# ---------------------------------------------------------------------------

def quotient_exponent(G, H: Subgroup, L: Subgroup) -> int:
    """Exponent of H/L (L normal in H assumed): lcm of the orders of hL."""
    els = H.elements
    mask = bitset.to_mask(L.bits, G.size)
    exp = 1
    cur = els.copy()
    k = 1
    pending = ~mask[cur]
    orders = np.ones(len(els), dtype=np.int64)
    while pending.any():
        cur = G.mul_many(cur, els)
        k += 1
        hit = pending & mask[cur]
        orders[hit] = k
        pending &= ~hit
    for o in np.unique(orders):
        exp = lcm(exp, int(o))
    return exp


@dataclass
class IntervalReport:
    cd: CDLattice = field(repr=False)
    lower: int
    upper: int
    nodes: list[int]
    shape: ShapeReport
    quotient_order: int
    quotient_exponent: int

    @property
    def L(self) -> Subgroup:
        return self.cd.members[self.lower]

    @property
    def H(self) -> Subgroup:
        return self.cd.members[self.upper]

    @property
    def atom_nodes(self) -> list[int]:
        """Member indices of the atoms, in member order (K_1, K_2, ...)."""
        return [a.node for a in self.shape.atoms] if self.shape.kind == "QuasiAntichain" else []

    @property
    def width(self) -> int:
        return len(self.atom_nodes)


def interval(L: CDLattice, lower, upper) -> IntervalReport:
    lo = lower if isinstance(lower, int) else L.index(lower)
    hi = upper if isinstance(upper, int) else L.index(upper)
    if not L.lattice.leq[lo, hi]:
        raise NotComparable("lower bound is not contained in the upper bound")
    nodes = L.lattice.interval_nodes(lo, hi)
    sub = L.lattice.sublattice(nodes)
    orders = L.orders()
    flags = L.abelian_flags()
    local = {g: k for k, g in enumerate(nodes)}
    dual = [local.get(L.duality[g]) for g in nodes]
    shape = classify_shape(sub, [orders[g] for g in nodes], [flags[g] for g in nodes], dual)
    for a in shape.atoms:
        a.node = nodes[a.node]
        a.dual = nodes[a.dual] if a.dual is not None else L.duality[a.node]
    G = L.group
    H, Lo = L.members[hi], L.members[lo]
    return IntervalReport(L, lo, hi, nodes, shape, H.order // Lo.order,
                          quotient_exponent(G, H, Lo))


def _quotient_prime(H: Subgroup, L: Subgroup, p: int | None) -> int:
    index = H.order // L.order
    if p is None:
        primes = prime_factors(index)
        if len(primes) != 1:
            raise PrimeNotDividing(f"|H/L| = {index} is not a prime power; pass p explicitly")
        p = primes[0]
    if index % p:
        raise PrimeNotDividing(f"{p} does not divide |H/L| = {index}")
    return p


def omega_hypothesis(L: CDLattice, lower: int, upper: int) -> bool:
    """[HH*, HH*] <= L cap L* where H* = C(L), L* = C(H)."""
    G = L.group
    Lo, H = L.members[lower], L.members[upper]
    Hs, Ls = L.members[L.duality[lower]], L.members[L.duality[upper]]
    HHs = Subgroup(G, setwise_product(G, H, Hs))
    return commutators_within(G, HHs, HHs, Lo & Ls)


def omega_subgroup(L: CDLattice, lower: int, upper: int, k: int, p: int | None = None) -> Subgroup:
    """A_k(H): preimage in H of the subgroup of H/L generated by cosets of
    order dividing p^k."""
    G = L.group
    Lo, H = L.members[lower], L.members[upper]
    p = _quotient_prime(H, Lo, p)
    if not omega_hypothesis(L, lower, upper):
        raise HypothesisViolated("[HH*, HH*] is not contained in L cap L*")
    els = H.elements
    powered = G.power_many(els, p**k)
    mask = bitset.to_mask(Lo.bits, G.size)
    return generated_subgroup(G, list(els[mask[powered]]))


def agemo_subgroup(L: CDLattice, lower: int, upper: int, k: int, p: int | None = None) -> Subgroup:
    """B_k(H) = <x^(p^k) : x in H> L."""
    G = L.group
    Lo, H = L.members[lower], L.members[upper]
    p = _quotient_prime(H, Lo, p)
    if not omega_hypothesis(L, lower, upper):
        raise HypothesisViolated("[HH*, HH*] is not contained in L cap L*")
    powers = np.unique(G.power_many(H.elements, p**k))
    return generated_subgroup(G, list(powers) + list(small_generating_set(Lo)))


def atom_compose(L: CDLattice, iv: IntervalReport, i: int, j: int) -> Subgroup:
    """K_{i,j} = {k b_i(k) b_j(k) : k in K_1} L for atoms numbered from 1.

    Base pair: K_1, K_2 are the two smallest atoms by (order, bitset).  For
    k in K_1, b_i(k) is an element of K_2 with k b_i(k) in K_i, and b_2 = 1.
    """
    if iv.shape.kind != "QuasiAntichain":
        raise NotQuasiAntichain("interval is not a quasi-antichain")
    atoms = iv.atom_nodes
    w = len(atoms)
    if w < 3:
        raise WidthTooSmall(f"width {w} < 3")
    for x in (i, j):
        if not 2 <= x <= w:
            raise ValueError(f"atom index {x} outside 2..{w}")
    G = L.group
    K = [L.members[a] for a in atoms]
    Lo = L.members[iv.lower]
    K1, K2 = K[0], K[1]
    k_els = K1.elements
    k2 = K2.elements

    def beta(idx: int) -> np.ndarray:
        if idx == 2:
            return np.zeros(len(k_els), dtype=np.int64)
        target = bitset.to_mask(K[idx - 1].bits, G.size)
        out = np.empty(len(k_els), dtype=np.int64)
        for n, k in enumerate(k_els):
            hits = np.flatnonzero(target[G.mul_many(int(k), k2)])
            if hits.size == 0:
                raise HypothesisViolated("K_i is not a subdirect product over K_1 x K_2")
            out[n] = k2[hits[0]]
        return out

    delta = G.mul_many(G.mul_many(k_els, beta(i)), beta(j))
    mask = np.zeros(G.size, dtype=bool)
    for l_ in Lo.elements:
        mask[G.mul_many(delta, int(l_))] = True
    return Subgroup(G, bitset.from_mask(mask))

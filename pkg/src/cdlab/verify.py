"""Checks of the structural claims about CD lattices and quasi-antichain intervals.

Every check records a pass/fail entry instead of raising, so one report shows
all failures at once.  Entries marked ``required=False`` are informational
(claims that only hold under hypotheses the input does not meet).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import bitset
from .bilinear import BilinearModel, restricted_data
from .cd import (
    CDLattice,
    IntervalReport,
    cd_lattice,
    interval,
    quotient_exponent,
)
from .errors import HypothesisViolated, InconsistentInput, RadicalNotTrivial, WidthTooSmall
from .gfp import encode, prime_factors, prime_power_exponent
from .groups import ELEMENT_CAP, FiniteGroup, element_order, from_class2_data, induced_group
from .lattice import lattice_isomorphic
from .subgroups import (
    Subgroup,
    center,
    centralizer,
    commutator_subgroup,
    commutators_within,
    derived_subgroup,
    generated_subgroup,
    is_abelian,
    is_normal,
    setwise_product,
    whole,
)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    required: bool = True


@dataclass
class VerificationReport:
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, passed, detail: str = "", required: bool = True) -> bool:
        self.checks.append(Check(name, bool(passed), detail, required))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.required and not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c.name for c in self.checks]

    def to_dict(self) -> dict:
        return {"subject": self.subject, "passed": self.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail,
                            "required": c.required} for c in self.checks],
                "data": {k: str(v) if isinstance(v, int) else v for k, v in self.data.items()}}


# ---------------------------------------------------------------------------
# Quotient helpers
# ---------------------------------------------------------------------------

def is_elementary_abelian_quotient(G, H: Subgroup, L: Subgroup) -> tuple[bool, int | None]:
    """(H/L elementary abelian, its prime or None for the trivial quotient)."""
    index = H.order // L.order
    if index == 1:
        return True, None
    primes = prime_factors(index)
    if len(primes) != 1:
        return False, None
    p = primes[0]
    if quotient_exponent(G, H, L) != p:
        return False, p
    return commutators_within(G, H, H, L), p


# ---------------------------------------------------------------------------
# Interval propositions
# ---------------------------------------------------------------------------

def verify_interval_propositions(iv: IntervalReport) -> VerificationReport:
    """Normality and commutator claims (a), the index equality (b), the
    width-3-and-up structure (c) and the centralizing containment (d)."""
    L_ = iv.cd
    G = L_.group
    rep = VerificationReport(f"interval [{iv.lower}, {iv.upper}]")
    if iv.shape.kind != "QuasiAntichain":
        rep.add("quasi-antichain", False, f"interval shape is {iv.shape.label()}")
        return rep
    M = L_.members
    dual = L_.duality
    H, Lo = M[iv.upper], M[iv.lower]
    Hs, Ls = M[dual[iv.lower]], M[dual[iv.upper]]
    atoms = iv.atom_nodes
    K = [M[a] for a in atoms]
    Ks = [M[dual[a]] for a in atoms]
    w = len(atoms)
    rep.data.update(w=w, t=iv.shape.t, u=iv.shape.u)

    # (a)
    rep.add("a: L normal in H", is_normal(G, Lo, by=H))
    rep.add("a: atoms normal in H", all(is_normal(G, k, by=H) for k in K))
    rep.add("a: [K_i, K_j] <= L", all(commutators_within(G, a, b, Lo) for a, b in combinations(K, 2)))
    rep.add("a: L* normal in H*", is_normal(G, Ls, by=Hs))
    rep.add("a: dual atoms normal in H*", all(is_normal(G, k, by=Hs) for k in Ks))
    rep.add("a: [K_i*, K_j*] <= L*", all(commutators_within(G, a, b, Ls) for a, b in combinations(Ks, 2)))
    # (b)
    idx = [k.order // Lo.order for k in K]
    idx_s = [k.order // Ls.order for k in Ks]
    rep.add("b: |K_i:L| = |K_j*:L*|",
            all(idx[i] == idx_s[j] for i in range(w) for j in range(w) if i != j),
            f"|K_i:L| = {idx}, |K_i*:L*| = {idx_s}")
    # (d)
    HHs = Subgroup(G, setwise_product(G, H, Hs))
    meet = Lo & Ls
    rep.add("d: [H, H*] <= L cap L*", commutators_within(G, H, Hs, meet), required=w >= 3)
    if w < 3:
        return rep
    rep.add("d: L cap L* = C(HH*)", centralizer(G, HHs).bits == meet.bits)
    # (c)
    ok, p = is_elementary_abelian_quotient(G, H, Lo)
    ok_s, p_s = is_elementary_abelian_quotient(G, Hs, Ls)
    rep.add("c: H/L elementary abelian", ok and p is not None, f"p = {p}")
    rep.add("c: H*/L* elementary abelian, same order", ok_s and p_s == p and Hs.order // Ls.order == H.order // Lo.order)
    rep.add("c: K_i/L elementary abelian of equal order",
            len(set(idx)) == 1 and all(is_elementary_abelian_quotient(G, k, Lo)[0] for k in K))
    index = H.order // Lo.order
    top_index = H.order // K[0].order
    rep.add("c: |H/L| = |H/K_1|^2", index == top_index**2, f"{index} vs {top_index}^2")
    if p is None:
        return rep
    k = prime_power_exponent(index, p)
    a = k // 2 if k is not None and k % 2 == 0 else None
    rep.add("c: |H/L| = p^(2a)", a is not None and a >= 1, f"|H/L| = {index}")
    b = prime_power_exponent(w - 1, p)
    rep.add("c: w = p^b + 1", b is not None and b >= 1, f"w = {w}, p = {p}")
    rep.add("c: b <= a", a is not None and b is not None and b <= a, f"a = {a}, b = {b}")
    rep.data.update(p=p, a=a, b=b)
    return rep


def quasi_antichain_intervals(L: CDLattice, min_width: int = 3) -> list[IntervalReport]:
    """Every interval of L that is a quasi-antichain of width >= ``min_width``."""
    out = []
    leq = L.lattice.leq
    for lo in range(len(L)):
        for hi in range(len(L)):
            if lo == hi or not leq[lo, hi]:
                continue
            nodes = L.lattice.interval_nodes(lo, hi)
            w = len(nodes) - 2
            if w < min_width:
                continue
            sub = leq[np.ix_(nodes, nodes)]
            mids = [k for k, g in enumerate(nodes) if g not in (lo, hi)]
            if any(sub[i, j] for i in mids for j in mids if i != j):
                continue
            out.append(interval(L, lo, hi))
    return out


# ---------------------------------------------------------------------------
# Constraint checker for quasi-antichain CD lattices of p-groups
# ---------------------------------------------------------------------------

@dataclass
class ConstraintReport:
    p: int
    w: int
    t: int
    u: int
    a: int | None = None
    b: int | None = None
    c: int | None = None
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def parts_violated(self) -> list[str]:
        return [v.split(":")[0] for v in self.violations]


def _log_exact(n: int, p: int) -> int | None:
    return prime_power_exponent(n, p) if n >= 1 else None


def theorem_constraints_check(p: int, w: int, t: int, u: int, a: int | None = None) -> ConstraintReport:
    """Evaluate the width theorem (w = p^b + 1) and the five constraints
    relating p, t and u.  Each violation is reported as ``"<part>: reason"``.

    c is read from t = p^c + 1 allowing c = 0 (t = 2), which the computed
    bigex/bigex2 examples realize for odd p.
    """
    if w != t + 2 * u:
        raise InconsistentInput(f"w = {w} but t + 2u = {t + 2 * u}")
    if w < 3:
        raise WidthTooSmall(f"width {w} < 3")
    rep = ConstraintReport(p, w, t, u, a)
    b = _log_exact(w - 1, p)
    if b is None or b < 1:
        rep.violations.append(f"w: w - 1 = {w - 1} is not a positive power of {p}")
    else:
        rep.b = b
        if a is not None and b > a:
            rep.violations.append(f"w: b = {b} exceeds a = {a}")
    if t == 0 and p == 2:
        rep.violations.append("1: t = 0 requires p odd")
    if t == 1 and p != 2:
        rep.violations.append("2: t = 1 requires p = 2")
    if t >= 2:
        c = _log_exact(t - 1, p)
        if c is None:
            rep.violations.append(f"3: t - 1 = {t - 1} is not a power of {p}")
        else:
            rep.c = c
            if a is not None and c > a:
                rep.violations.append(f"3: c = {c} exceeds a = {a}")
            if (t - 2) % (p - 1):
                rep.violations.append(f"3: p - 1 = {p - 1} does not divide t - 2 = {t - 2}")
            if p == 2:
                if t < 3:
                    rep.violations.append("3: p = 2 requires t >= 3")
                elif u % 2 ** (c - 1):
                    rep.violations.append(f"3: 2^(c-1) = {2 ** (c - 1)} does not divide u = {u}")
            elif u % p**c:
                rep.violations.append(f"3: p^c = {p**c} does not divide u = {u}")
    if t >= 2 and u >= 1:
        lo, hi = (3, 2 * u + 1) if p == 2 else (2, u + 1)
        if not lo <= t <= hi:
            rep.violations.append(f"4: need {lo} <= t <= {hi}, got t = {t}")
    if t >= 3 and t < p + 1:
        rep.violations.append(f"5: t = {t} < p + 1 = {p + 1}")
    return rep


# ---------------------------------------------------------------------------
# Sylow structure for quasi-antichain CD lattices containing G
# ---------------------------------------------------------------------------

def _is_p_power(n: int, p: int) -> bool:
    return prime_power_exponent(n, p) is not None


def verify_pgrp_structure(G: FiniteGroup, L: CDLattice | None = None) -> VerificationReport:
    """Class 2, G = P x Q with P the nonabelian Sylow p-subgroup and Q abelian,
    CD(G) isomorphic to CD(P), and |G/Z(G)| = |P/Z(P)| = p^(2a) with w = p^b + 1."""
    L = cd_lattice(G) if L is None else L
    shape = L.shape()
    top = L.members[L.top]
    if shape.kind != "QuasiAntichain" or shape.w < 3 or top.bits != G.full_bits:
        raise HypothesisViolated("needs a quasi-antichain CD lattice of width >= 3 containing G")
    rep = VerificationReport("p-group structure")
    Gw = whole(G)
    D = derived_subgroup(G)
    rep.add("class 2: [G, [G, G]] = 1", commutator_subgroup(G, Gw, D).order == 1)
    Z = center(G)
    index = G.order // Z.order
    primes = prime_factors(index)
    if not rep.add("|G/Z(G)| is a prime power", len(primes) == 1, f"|G/Z| = {index}"):
        return rep
    p = primes[0]
    orders = np.array([element_order(G, x) for x in range(G.order)])
    is_p = np.array([_is_p_power(int(o), p) for o in orders])
    P = generated_subgroup(G, np.flatnonzero(is_p))
    Q = generated_subgroup(G, np.flatnonzero(orders % p != 0))
    sylow = p_part(G.order, p)
    rep.add("P is a Sylow p-subgroup", P.order == sylow and bitset.popcount(P.bits) == int(is_p.sum()),
            f"|P| = {P.order}")
    rep.add("P nonabelian", not is_abelian(P))
    rep.add("Q abelian p'-group", is_abelian(Q) and Q.order * sylow == G.order)
    rep.add("G = P x Q", (P & Q).order == 1 and commutators_within(G, P, Q, Subgroup(G, 1)))
    Pg = induced_group(G, P)
    LP = cd_lattice(Pg)
    if L.lattice.n <= 64:
        rep.add("CD(G) isomorphic to CD(P)", lattice_isomorphic(L.lattice, LP.lattice))
    ZP = center(Pg)
    k = prime_power_exponent(index, p)
    rep.add("|G/Z(G)| = |P/Z(P)| = p^(2a)", k % 2 == 0 and Pg.order // ZP.order == index,
            f"|G/Z| = {index}, |P/Z(P)| = {Pg.order // ZP.order}")
    rep.add("P in CD(P)", LP.members[LP.top].bits == Pg.full_bits)
    b = prime_power_exponent(shape.w - 1, p)
    rep.add("w = p^b + 1, b <= a", b is not None and 1 <= b <= k // 2)
    rep.data.update(p=p, a=k // 2, b=b, P_order=P.order, Q_order=Q.order)
    return rep


def p_part(n: int, p: int) -> int:
    """Largest power of p dividing n."""
    out = 1
    while n % p == 0:
        n //= p
        out *= p
    return out


# ---------------------------------------------------------------------------
# Lattice axioms
# ---------------------------------------------------------------------------

def cd_of_top(L: CDLattice, cap: int = ELEMENT_CAP) -> list[int] | None:
    """CD(M) for the maximum member M, as bitsets in the ambient universe of L.
    None when the recomputation is out of reach."""
    G = L.group
    M = L.members[L.top]
    if M.bits == G.full_bits:
        return sorted(m.bits for m in L.members)
    if isinstance(G, BilinearModel):
        basis = G.basis_of(M.bits)
        data = restricted_data(G.data, basis)
        try:
            sub = BilinearModel(data)
        except RadicalNotTrivial:
            if data.order > cap:
                return None
            H = from_class2_data(data, cap)
            LM = cd_lattice(H)
            out = []
            for m in LM.members:
                # (u', z) -> u' @ basis; every member contains the centre z-part
                els = m.elements
                u = np.array([H.element(int(x))[0] for x in els], dtype=np.int64).reshape(len(els), -1)
                codes = encode((u @ basis) % G.p, G.p) if len(basis) else np.zeros(len(els), dtype=np.int64)
                out.append(bitset.from_indices(np.unique(codes), G.size))
            return sorted(set(out))
        LM = cd_lattice(sub)
        out = []
        for m in LM.members:
            vecs = sub.vectors[m.elements]
            codes = encode((vecs @ basis) % G.p, G.p)
            out.append(bitset.from_indices(codes, G.size))
        return sorted(out)
    H = induced_group(G, M)
    LM = cd_lattice(H)
    return sorted(bitset.from_indices(H.parent_indices[m.elements], G.size) for m in LM.members)


def verify_lattice_axioms(L: CDLattice, recompute_top: bool = True) -> VerificationReport:
    G = L.group
    M = L.members
    n = len(M)
    lat = L.lattice
    rep = VerificationReport("lattice axioms")
    dual = L.duality
    rep.add("duality is an involution", all(dual[dual[k]] == k for k in range(n)))
    rep.add("duality reverses covers", all(lat.leq[dual[b], dual[a]] for a, b in lat.covers))
    rep.add("is a lattice", lat.is_lattice())
    rep.add("modular (no N5)", lat.is_modular(), str(lat.find_pentagon() or ""))
    J, Mt = lat._tables()
    join_ok = meet_ok = True
    for i in range(n):
        for j in range(i + 1, n):
            hk = setwise_product(G, M[i], M[j])
            if hk != M[J[i, j]].bits or hk != setwise_product(G, M[j], M[i]):
                join_ok = False
            if (M[i].bits & M[j].bits) != M[Mt[i, j]].bits:
                meet_ok = False
    rep.add("join = setwise product HK = KH", join_ok)
    rep.add("meet = intersection", meet_ok)
    rep.add("maximal chains of equal length", len(lat.maximal_chain_lengths()) == 1,
            str(sorted(lat.maximal_chain_lengths())))
    top = M[L.top]
    rep.add("atoms normal in the maximum member",
            all(is_normal(G, M[a], by=top) for a in lat.atoms()))
    rep.add("co-atoms normal in the maximum member",
            all(is_normal(G, M[a], by=top) for a in lat.coatoms()))
    bottom = M[L.bottom]
    rep.add("bottom below every member", all(bitset.is_subset(bottom.bits, m.bits) for m in M))
    ztop = top.bits & M[dual[L.top]].bits
    rep.add("Z(M) <= bottom", bitset.is_subset(ztop, bottom.bits))
    rep.add("all members have measure m*",
            all(m.order * M[dual[k]].order == L.m_star.value for k, m in enumerate(M)))
    if recompute_top:
        cdm = cd_of_top(L)
        if cdm is None:
            rep.add("CD(G) = CD(M)", True, "skipped: M too large to recompute", required=False)
        else:
            rep.add("CD(G) = CD(M)", cdm == sorted(m.bits for m in M))
    return rep

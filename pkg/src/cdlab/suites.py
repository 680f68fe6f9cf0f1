"""Named verification suites over a standard corpus of groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import bitset
from .bilinear import BilinearModel
from .cd import CDLattice, agemo_subgroup, cd_lattice, omega_hypothesis, omega_subgroup, quotient_exponent
from .constructions import (
    ConstructionSpec,
    bigex_atom_basis,
    catalog,
    example_specs,
    spec,
)
from .errors import RadicalNotTrivial, UnknownSuite
from .gfp import prime_factors, prime_power_exponent, rank
from .groups import TABLE_CAP, element_order
from .subgroups import Subgroup, center, derived_subgroup, whole
from .verify import (
    is_elementary_abelian_quotient,
    quasi_antichain_intervals,
    theorem_constraints_check,
    verify_interval_propositions,
    verify_lattice_axioms,
    verify_pgrp_structure,
    p_part,
)


@dataclass
class SuiteResult:
    name: str
    cases: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, label: str, passed, detail: str = "") -> None:
        self.cases.append((label, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.cases)

    @property
    def failures(self) -> list[tuple[str, bool, str]]:
        return [c for c in self.cases if not c[1]]

    def summary(self) -> str:
        n = len(self.cases)
        return f"{self.name}: {n - len(self.failures)}/{n} passed"


def extra_specs() -> list[ConstructionSpec]:
    """Products and one-off groups used beside the catalog."""
    D4, C5, C9 = spec("dihedral", n=4), spec("cyclic", n=5), spec("cyclic", n=9)
    X3 = spec("extraspecial", p=3, variant="plus")
    S4 = spec("symmetric", n=4)
    return [spec("direct_product", D4, D4), spec("direct_product", X3, C5), spec("direct_product", D4, C9),
            spec("direct_product", S4, S4), spec("unitriangular", m=4, dim=3)]


def standard_corpus(max_order: int = 32) -> list[ConstructionSpec]:
    seen, out = set(), []
    for s in example_specs() + extra_specs() + catalog(max_order):
        if s not in seen:
            seen.add(s)
            out.append(s)
    return out


def lattice_for(s: ConstructionSpec) -> CDLattice:
    """Bilinear path whenever the construction has class-2 data with trivial radical."""
    return _lattice_for(s)


@lru_cache(maxsize=None)
def _lattice_for(s: ConstructionSpec) -> CDLattice:
    data = s.data()
    if data is not None:
        try:
            return cd_lattice(BilinearModel(data))
        except RadicalNotTrivial:
            pass
    return cd_lattice(s.build())


def _contains_group(L: CDLattice) -> bool:
    return L.members[L.top].bits == L.group.full_bits


def _qa_whole(L: CDLattice) -> bool:
    sh = L.shape()
    return sh.kind == "QuasiAntichain" and sh.w >= 3 and _contains_group(L)


def _is_p_group(L: CDLattice) -> bool:
    n = L.group.order
    return len(prime_factors(n)) == 1


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_lattice_axioms(corpus) -> SuiteResult:
    res = SuiteResult("lattice-axioms")
    for s in corpus:
        r = verify_lattice_axioms(lattice_for(s))
        res.add(s.label, r.passed, "; ".join(c.name for c in r.failures))
    return res


def _interval_suite(name: str, corpus, prefixes: tuple[str, ...], min_width: int) -> SuiteResult:
    res = SuiteResult(name)
    for s in corpus:
        L = lattice_for(s)
        for iv in quasi_antichain_intervals(L, min_width):
            r = verify_interval_propositions(iv)
            bad = [c.name for c in r.failures if c.name.startswith(prefixes)]
            checked = [c for c in r.checks if c.name.startswith(prefixes)]
            res.add(f"{s.label} [{iv.lower},{iv.upper}] w={iv.width}", not bad and checked, "; ".join(bad))
    return res


def suite_basic(corpus) -> SuiteResult:
    return _interval_suite("basic", corpus, ("a:", "b:", "c: |H/L| = |H/K_1|^2"), 2)


def suite_theorem_w(corpus) -> SuiteResult:
    return _interval_suite("theorem-w", corpus, ("c:",), 3)


def suite_centralizing(corpus) -> SuiteResult:
    res = _interval_suite("centralizing", corpus, ("d:", "c: H/L elementary", "c: H*/L*"), 3)
    for s in corpus:
        L = lattice_for(s)
        if not _qa_whole(L) or isinstance(L.group, BilinearModel):
            continue
        G = L.group
        Gw = whole(G)
        Z, D = center(G), derived_subgroup(G)
        ok1, _ = is_elementary_abelian_quotient(G, Gw, Z)
        ok2, _ = is_elementary_abelian_quotient(G, D, Subgroup(G, 1))
        res.add(f"{s.label}: G/Z(G) and [G,G] elementary abelian", ok1 and ok2)
    return res


def suite_omegaspt1(corpus) -> SuiteResult:
    res = SuiteResult("omegaspt1")
    for s in corpus:
        L = lattice_for(s)
        if len(L) > 64 or isinstance(L.group, BilinearModel):
            continue
        G = L.group
        dual = L.duality
        for lo in range(len(L)):
            for hi in range(len(L)):
                if lo == hi or not L.lattice.leq[lo, hi] or not omega_hypothesis(L, lo, hi):
                    continue
                H, Lo = L.members[hi], L.members[lo]
                hs_lo, hs_hi = dual[hi], dual[lo]  # [L*, H*]
                exp = quotient_exponent(G, H, Lo)
                for p in prime_factors(H.order // Lo.order):
                    top_k = prime_power_exponent(p_part(exp, p), p) + 1
                    for k in range(1, top_k + 1):
                        A = omega_subgroup(L, lo, hi, k, p)
                        B = agemo_subgroup(L, lo, hi, k, p)
                        Bs = agemo_subgroup(L, hs_lo, hs_hi, k, p)
                        ok = (L.contains(A) and L.contains(B)
                              and L.members[dual[L.index(A)]].bits == Bs.bits
                              and (A.order // Lo.order) * B.order == H.order)
                        res.add(f"{s.label} [{lo},{hi}] p={p} k={k}", ok)
    return res


def suite_xspec(corpus) -> SuiteResult:
    """For G in CD(G) with [G,G] cyclic: CD(G) is a quasi-antichain of width >= 3
    exactly when |[G,G]| = p and G/Z(G) = C_p x C_p, and then w = p + 1."""
    res = SuiteResult("xspec")
    for s in corpus:
        L = lattice_for(s)
        if not _contains_group(L):
            continue
        G = L.group
        if isinstance(G, BilinearModel):
            data = G.data
            r = rank(data.B.reshape(-1, data.e), data.p) if data.e else 0
            if r > 1:
                continue
            cond = r == 1 and data.d == 2
            p = data.p
        else:
            D = derived_subgroup(G)
            if not _is_cyclic(G, D):
                continue
            Z = center(G)
            idx = G.order // Z.order
            ps = prime_factors(D.order)
            p = ps[0] if len(ps) == 1 else None
            cond = (p is not None and D.order == p and idx == p * p
                    and is_elementary_abelian_quotient(G, whole(G), Z)[0])
        sh = L.shape()
        qa = sh.kind == "QuasiAntichain" and sh.w >= 3
        ok = qa == cond and (not qa or sh.w == p + 1)
        res.add(s.label, ok, f"quasi-antichain={qa}, condition={cond}")
    return res


def _is_cyclic(G, H: Subgroup) -> bool:
    return any(element_order(G, int(x)) == H.order for x in H.elements)


def suite_pgrp(corpus) -> SuiteResult:
    res = SuiteResult("pgrp")
    for s in corpus:
        L = lattice_for(s)
        if not _qa_whole(L):
            continue
        if isinstance(L.group, BilinearModel):
            if L.group.order > TABLE_CAP:
                continue
            r = verify_pgrp_structure(s.build())
        else:
            r = verify_pgrp_structure(L.group, L)
        res.add(s.label, r.passed, "; ".join(c.name for c in r.failures))
    return res


def suite_s_gt_1(corpus) -> SuiteResult:
    res = SuiteResult("s-gt-1")
    for s in corpus:
        L = lattice_for(s)
        if not _qa_whole(L) or not _is_p_group(L):
            continue
        sh = L.shape()
        c = theorem_constraints_check(sh.p, sh.w, sh.t, sh.u, sh.a)
        res.add(f"{s.label} (p={sh.p}, w={sh.w}, t={sh.t}, u={sh.u})", c.passed, "; ".join(c.violations))
    return res


def suite_corollary_w6(corpus=None) -> SuiteResult:
    res = SuiteResult("corollary-w6")
    rej = theorem_constraints_check(5, 6, 4, 1)
    res.add("(p=5, w=6, t=4, u=1) rejected by part 4", not rej.passed and "4" in rej.parts_violated(),
            "; ".join(rej.violations))
    for s in (spec("bigex", p=5), spec("extraspecial", p=5, variant="plus")):
        sh = lattice_for(s).shape()
        c = theorem_constraints_check(sh.p, sh.w, sh.t, sh.u, sh.a)
        res.add(f"{s.label} (w={sh.w}, t={sh.t}, u={sh.u}) accepted", sh.w == 6 and c.passed,
                "; ".join(c.violations))
    return res


# expected (w, t, u) and m* exponent for the worked examples
def expected_example(s: ConstructionSpec) -> dict | None:
    P = s.params
    if s.name == "extraspecial":
        p = P["p"]
        return {"wtu": (p + 1, p + 1, 0), "m_star": p**4}
    if s.name == "heisenberg":
        p, n = P["p"], P["n"]
        return {"wtu": (p**n + 1, p**n + 1, 0), "m_star": p ** (4 * n), "atom_order": p ** (2 * n)}
    if s.name == "width2_abelian":
        p = P["p"]
        return {"wtu": (2, 2, 0), "m_star": p**12, "atom_order": p**6}
    if s.name in ("bigex", "bigex2"):
        p = P["p"]
        if p == 2:
            wtu = (3, 1, 1)
        elif s.name == "bigex2" or p % 4 == 1:
            wtu = (p + 1, 2, (p - 1) // 2)
        else:
            wtu = (p + 1, 0, (p + 1) // 2)
        return {"wtu": wtu, "m_star": p**12}
    return None


def bigex_duality_ok(s: ConstructionSpec, L: CDLattice) -> bool:
    """C(M_k) = M_(-1/k) for bigex, M_(1/k) for bigex2, and C(M_0) = M_p."""
    model = L.group
    if not isinstance(model, BilinearModel):
        return False
    p = s.params["p"]
    idx = {k: L.index(Subgroup(model, model.span_bits(bigex_atom_basis(p, k)))) for k in range(p + 1)}
    if L.duality[idx[0]] != idx[p]:
        return False
    sign = -1 if s.name == "bigex" else 1
    for k in range(1, p):
        j = (sign * pow(k, -1, p)) % p
        if L.duality[idx[k]] != idx[j]:
            return False
    return True


def suite_examples(corpus=None) -> SuiteResult:
    res = SuiteResult("examples")
    for s in example_specs():
        exp = expected_example(s)
        L = lattice_for(s)
        sh = L.shape()
        ok = (sh.kind == "QuasiAntichain" and (sh.w, sh.t, sh.u) == exp["wtu"]
              and L.m_star.value == exp["m_star"])
        if "atom_order" in exp:
            ok = ok and all(a.order == exp["atom_order"] for a in sh.atoms)
        if s.name in ("bigex", "bigex2"):
            ok = ok and bigex_duality_ok(s, L)
        res.add(s.label, ok, f"{sh.label()}, m* = {L.m_star.value}")
    # H x H for H with CD(H) = {H, Z(H)}: width 2, atoms Z(H) x H and H x Z(H)
    S4 = spec("symmetric", n=4)
    LH = lattice_for(S4)
    L = lattice_for(spec("direct_product", S4, S4))
    sh = L.shape()
    G = L.group
    emb = G.embeddings
    zh = LH.members[LH.bottom].order
    atoms = sorted(L.members[a.node].bits for a in sh.atoms)
    want = sorted([_embed_product(G, LH.members[LH.bottom].bits, G.factors[1].full_bits),
                   _embed_product(G, G.factors[0].full_bits, LH.members[LH.bottom].bits)])
    ok = (len(LH) == 2 and _contains_group(LH) and zh == center(LH.group).order
          and (sh.w, sh.t, sh.u) == (2, 0, 1) and atoms == want and emb is not None)
    res.add("symmetric(4) x symmetric(4)", ok, sh.label())
    return res


def _embed_product(G, bits1: int, bits2: int) -> int:
    n2 = G.factors[1].order
    a = bitset.to_indices(bits1, G.factors[0].order)
    b = bitset.to_indices(bits2, n2)
    return bitset.from_indices((a[:, None] * n2 + b[None, :]).ravel(), G.order)


SUITES = {
    "lattice-axioms": suite_lattice_axioms,
    "omegaspt1": suite_omegaspt1,
    "basic": suite_basic,
    "centralizing": suite_centralizing,
    "theorem-w": suite_theorem_w,
    "xspec": suite_xspec,
    "pgrp": suite_pgrp,
    "s-gt-1": suite_s_gt_1,
    "corollary-w6": suite_corollary_w6,
    "examples": suite_examples,
}


def run_suite(name: str, max_order: int = 32) -> SuiteResult:
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](standard_corpus(max_order))

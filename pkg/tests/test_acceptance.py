"""Acceptance criteria, one test per criterion, all checks exact.

Each test records ``criterion`` and ``summary`` properties; conftest prints a
PASS/FAIL line per criterion at the end of the run.
"""
import time

import pytest

from cdlab.bilinear import BilinearModel
from cdlab.cd import atom_compose, cd_from_subgroups, cd_lattice, interval, measure
from cdlab.constructions import (
    bigex2_data, bigex_data, catalog, cyclic, dihedral, extraspecial, heisenberg, heisenberg_data,
    quaternion, spec, width2_abelian,
)
from cdlab.groups import direct_product, from_class2_data
from cdlab.lattice import lattice_isomorphic, lattice_product
from cdlab.subgroups import all_subgroups, center, generated_subgroup, is_abelian, whole
from cdlab.suites import bigex_duality_ok, lattice_for, standard_corpus
from cdlab.verify import (
    quasi_antichain_intervals, theorem_constraints_check, verify_interval_propositions, verify_lattice_axioms,
)

CORPUS_MAX_ORDER = 128


@pytest.fixture
def record(record_property):
    def rec(n, ok, summary):
        record_property("criterion", n)
        record_property("summary", summary)
        return ok
    return rec


def test_criterion_01_extraspecial(record):
    bad, worst = [], 0.0
    for p in (2, 3, 5):
        for variant in ("plus", "minus"):
            t0 = time.perf_counter()
            L = cd_lattice(extraspecial(p, variant))
            dt = time.perf_counter() - t0
            worst = max(worst, dt)
            sh = L.shape()
            ok = (sh.kind == "QuasiAntichain" and sh.w == p + 1 and all(a.abelian for a in sh.atoms)
                  and L.m_star.value == p**4 and dt < 1.0)
            if not ok:
                bad.append(f"{p}{variant}: {sh.label()} m*={L.m_star.value} {dt:.2f}s")
    assert record(1, not bad, f"extraspecial p=2,3,5 both variants, slowest {worst:.3f}s" + (f" {bad}" if bad else "")), bad


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2)])
def test_criterion_02_heisenberg(record, p, n):
    fast = (p, n) in ((2, 3), (3, 2))
    t0 = time.perf_counter()
    L = cd_lattice(BilinearModel(heisenberg_data(p, n))) if fast else cd_lattice(heisenberg(p, n))
    dt = time.perf_counter() - t0
    sh = L.shape()
    ok = (sh.kind == "QuasiAntichain" and sh.w == p**n + 1 and L.is_fast == fast
          and all(a.abelian and a.order == p ** (2 * n) for a in sh.atoms)
          and L.m_star.value == p ** (4 * n) and dt < 30.0)
    assert record(2, ok, f"heisenberg({p},{n}) {'fast' if fast else 'generic'}: {sh.label()} in {dt:.2f}s"), sh


def _bigex_check(maker, name, expected):
    rows, ok = [], True
    for p, wtu in expected.items():
        L = cd_lattice(BilinearModel(maker(p)))
        sh = L.shape()
        good = (sh.kind == "QuasiAntichain" and (sh.w, sh.t, sh.u) == wtu and L.m_star.value == p**12
                and bigex_duality_ok(spec(name, p=p), L))
        ok &= good
        rows.append(f"p={p} {(sh.w, sh.t, sh.u)}")
    return ok, rows


def test_criterion_03_bigex(record):
    t0 = time.perf_counter()
    ok, rows = _bigex_check(bigex_data, "bigex", {2: (3, 1, 1), 3: (4, 0, 2), 5: (6, 2, 2)})
    # p = 2 through the generic path on the expanded 512-element table
    data = bigex_data(2)
    G = from_class2_data(data)
    generic = cd_lattice(G)
    model = BilinearModel(data)
    fast = cd_lattice(model)
    same = sorted(model.to_group_bits(M.bits, G) for M in fast.members) == sorted(M.bits for M in generic.members)
    dt = time.perf_counter() - t0
    ok = ok and same and dt < 60.0
    assert record(3, ok, f"bigex {', '.join(rows)}; p=2 generic cross-check {same}; {dt:.1f}s total"), rows


def test_criterion_04_bigex2(record):
    ok, rows = _bigex_check(bigex2_data, "bigex2", {2: (3, 1, 1), 3: (4, 2, 1), 5: (6, 2, 2)})
    assert record(4, ok, f"bigex2 {', '.join(rows)}"), rows


def test_criterion_05_width2_abelian(record):
    G = width2_abelian(2)
    L = cd_lattice(G)
    Z = center(G)
    zs = list(Z.elements)
    M = generated_subgroup(G, [1, 2] + zs)
    N = generated_subgroup(G, [4, 8] + zs)
    members = {m.bits for m in L.members}
    sh = L.shape()
    ok = (G.order == 256 and members == {whole(G).bits, Z.bits, M.bits, N.bits}
          and sh.kind == "QuasiAntichain" and sh.w == 2 and is_abelian(M) and is_abelian(N)
          and L.m_star.value == 2**12)
    assert record(5, ok, f"width2_abelian(2): {sh.label()}, m* = {L.m_star.value}"), sh


def test_criterion_06_oracle_equivalence(record):
    specs = catalog(CORPUS_MAX_ORDER)
    mismatches = []
    for s in specs:
        G = s.build()
        if sorted(M.bits for M in cd_lattice(G).members) != cd_from_subgroups(G, all_subgroups(G)):
            mismatches.append(s.label)
    assert record(6, not mismatches, f"{len(specs)} catalog groups of order <= {CORPUS_MAX_ORDER}, "
                                     f"{len(mismatches)} mismatches"), mismatches


@pytest.fixture(scope="module")
def corpus():
    return [(s, lattice_for(s)) for s in standard_corpus(CORPUS_MAX_ORDER)]


def test_criterion_07_lattice_axioms(record, corpus):
    bad = []
    for s, L in corpus:
        rep = verify_lattice_axioms(L)
        if not rep.passed:
            bad.append(f"{s.label}: {[c.name for c in rep.failures]}")
    assert record(7, not bad, f"{len(corpus)} CD lattices, {len(bad)} failing"), bad


def test_criterion_08_theorem_w(record, corpus):
    count, bad = 0, []
    for s, L in corpus:
        for iv in quasi_antichain_intervals(L, 3):
            count += 1
            rep = verify_interval_propositions(iv)
            if not rep.passed:
                bad.append(f"{s.label} [{iv.lower},{iv.upper}]: {[c.name for c in rep.failures]}")
    assert record(8, count > 0 and not bad, f"{count} quasi-antichain intervals of width >= 3, "
                                            f"{len(bad)} violations"), bad


def test_criterion_09_constraint_checker(record, corpus):
    rej = theorem_constraints_check(5, 6, 4, 1)
    triples, bad = set(), []
    for s, L in corpus:
        sh = L.shape()
        top = L.members[L.top]
        if sh.kind != "QuasiAntichain" or sh.w < 3 or top.bits != L.group.full_bits or sh.p is None:
            continue
        n = L.group.order
        while n % sh.p == 0:
            n //= sh.p
        if n != 1:
            continue
        c = theorem_constraints_check(sh.p, sh.w, sh.t, sh.u, sh.a)
        triples.add((sh.p, sh.w, sh.t, sh.u))
        if not c.passed:
            bad.append(f"{s.label}: {c.violations}")
    ok = not rej.passed and "4" in rej.parts_violated() and not bad and (5, 6, 2, 2) in triples
    assert record(9, ok, f"(5,6,4,1) rejected ({','.join(rej.parts_violated())}); "
                         f"{len(triples)} computed triples accepted"), bad


def test_criterion_10_products(record):
    D4 = dihedral(4)
    LD = cd_lattice(D4)
    LP = cd_lattice(direct_product(D4, D4))
    X = extraspecial(3, "plus")
    LX = cd_lattice(X)
    LXC = cd_lattice(direct_product(X, cyclic(5)))
    ok = (len(LP) == 25 and lattice_isomorphic(LP.lattice, lattice_product(LD.lattice, LD.lattice))
          and lattice_isomorphic(LXC.lattice, LX.lattice))
    assert record(10, ok, f"CD(D4 x D4) has {len(LP)} members, CD(xs3 x C5) ~ CD(xs3)"), ok


@pytest.mark.parametrize("name", ["D4", "Q8", "xs3"])
def test_criterion_11_atom_compose(record, name):
    G = {"D4": dihedral(4), "Q8": quaternion(8), "xs3": extraspecial(3, "plus")}[name]
    L = cd_lattice(G)
    iv = interval(L, L.bottom, L.top)
    atoms = iv.atom_nodes
    w = len(atoms)
    ok = w >= 3
    for i in range(3, w + 1):
        ok &= atom_compose(L, iv, i, 2).bits == L.members[atoms[i - 1]].bits
        for j in range(3, w + 1):
            K = atom_compose(L, iv, i, j)
            ok &= L.contains(K) and L.index(K) in atoms and measure(G, K).value == L.m_star.value
    assert record(11, ok, f"atom_compose on CD({name}), w = {w}"), name

"""Property tests: random groups, random subgroups, random class-2 data."""
import numpy as np
from hypothesis import assume, given, settings, strategies as st

from cdlab import bitset
from cdlab.bilinear import BilinearModel, radical
from cdlab.cd import cd_from_subgroups, cd_lattice, measure
from cdlab.groups import Class2Data, from_class2_data, from_permutations
from cdlab.subgroups import all_subgroups, centralizer, generated_subgroup, setwise_product
from cdlab.verify import verify_lattice_axioms

perm5 = st.permutations(list(range(5)))


@st.composite
def perm_groups(draw):
    gens = draw(st.lists(perm5, min_size=1, max_size=3))
    return from_permutations(gens, 5)


@st.composite
def group_and_subgroup(draw):
    G = draw(perm_groups())
    seeds = draw(st.lists(st.integers(0, G.order - 1), max_size=2))
    return G, generated_subgroup(G, seeds)


@st.composite
def class2_data(draw):
    p = draw(st.sampled_from([2, 3]))
    d = draw(st.integers(2, 4))
    e = draw(st.integers(1, 2))
    assume(p ** (d + e) <= 729)
    com = {(i, j): draw(st.lists(st.integers(0, p - 1), min_size=e, max_size=e))
           for i in range(d) for j in range(i + 1, d)}
    powers = None
    if p == 2:
        powers = {i: draw(st.lists(st.integers(0, 1), min_size=e, max_size=e)) for i in range(d)}
    return Class2Data.from_commutators(p, d, e, com, powers)


@given(group_and_subgroup())
def test_lagrange_and_bicentralizer(gh):
    G, H = gh
    assert G.order % H.order == 0
    C = centralizer(G, H)
    CC = centralizer(G, C)
    assert H <= CC
    assert centralizer(G, CC) == C
    assert measure(G, CC).value >= measure(G, H).value


@settings(max_examples=25)
@given(perm_groups())
def test_cd_matches_oracle(G):
    L = cd_lattice(G)
    assert sorted(M.bits for M in L.members) == cd_from_subgroups(G, all_subgroups(G))


@settings(max_examples=25)
@given(perm_groups())
def test_cd_structure(G):
    L = cd_lattice(G)
    dual = L.duality
    for k, M in enumerate(L.members):
        assert dual[dual[k]] == k
        assert centralizer(G, M) == L.members[dual[k]]
        for j, N in enumerate(L.members):
            prod = setwise_product(G, M, N)
            assert any(P.bits == prod for P in L.members)
            assert any(P.bits == M.bits & N.bits for P in L.members)
    sh = L.shape()
    if sh.kind == "QuasiAntichain" and sh.t is not None:
        assert sh.w == sh.t + 2 * sh.u


@given(perm_groups(), st.data())
def test_measure_bounded_by_m_star(G, data):
    L = cd_lattice(G)
    seeds = data.draw(st.lists(st.integers(0, G.order - 1), max_size=3))
    H = generated_subgroup(G, seeds)
    assert measure(G, H).value <= L.m_star.value


@settings(max_examples=30)
@given(class2_data())
def test_fast_path_matches_expanded_group(data):
    assume(len(radical(data)) == 0)
    G = from_class2_data(data)
    model = BilinearModel(data)
    fast, slow = cd_lattice(model), cd_lattice(G)
    assert fast.m_star.value == slow.m_star.value
    assert sorted(model.to_group_bits(M.bits, G) for M in fast.members) == sorted(M.bits for M in slow.members)
    assert fast.duality == slow.duality


@settings(max_examples=20)
@given(class2_data())
def test_lattice_axioms_random_class2(data):
    G = from_class2_data(data)
    rep = verify_lattice_axioms(cd_lattice(G))
    assert rep.passed, [c.name for c in rep.failures]


@given(class2_data(), st.data())
def test_class2_identities(data, draw):
    G = from_class2_data(data)
    el = st.integers(0, G.order - 1)
    a, b, c = draw.draw(el), draw.draw(el), draw.draw(el)
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    z = bitset.to_mask(G.central_bits(), G.order)
    assert z[G.commutator(a, b)]
    # commutators are bilinear: [ab, c] = [a, c][b, c]
    assert G.commutator(G.mul(a, b), c) == G.mul(G.commutator(a, c), G.commutator(b, c))
    u = np.array(draw.draw(st.lists(st.integers(0, data.p - 1), min_size=data.d, max_size=data.d)))
    assert not data.form(u, u).any()

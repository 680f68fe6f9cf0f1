import pytest
from hypothesis import given, strategies as st

from cdlab import bitset
from cdlab.constructions import cyclic, dihedral, elementary_abelian, quaternion, symmetric
from cdlab.errors import FamilyCapExceeded, IndexOutOfRange, OracleCapExceeded
from cdlab.subgroups import (
    all_subgroups, bicentralizer_family, center, centralizer, commutator_subgroup, derived_subgroup,
    generated_subgroup, intersection_closure, is_abelian, is_normal, join, normal_closure, setwise_product,
    small_generating_set, trivial, whole,
)


def brute_centralizer(G, H):
    return {g for g in range(G.order) if all(G.mul(g, int(h)) == G.mul(int(h), g) for h in H.elements)}


@pytest.mark.parametrize("G,count", [(symmetric(3), 6), (dihedral(4), 10), (quaternion(8), 6),
                                     (symmetric(4), 30), (cyclic(12), 6), (elementary_abelian(2, 3), 16),
                                     (dihedral(8), 19)])
def test_subgroup_counts(G, count):
    subs = all_subgroups(G)
    assert len(subs) == count
    assert len({H.bits for H in subs}) == count
    for H in subs:
        assert G.order % H.order == 0


def test_oracle_cap():
    with pytest.raises(OracleCapExceeded):
        all_subgroups(dihedral(65))


def test_generated_and_join(D4):
    r = generated_subgroup(D4, [1])
    assert r.order in (2, 4)
    assert generated_subgroup(D4, []).order == 1
    assert join(D4, *all_subgroups(D4)).order == 8
    with pytest.raises(IndexOutOfRange):
        generated_subgroup(D4, [8])


@given(st.sets(st.integers(0, 23), max_size=3))
def test_small_generating_set_regenerates(seeds):
    G = symmetric(4)
    H = generated_subgroup(G, sorted(seeds))
    assert generated_subgroup(G, small_generating_set(H)) == H


@pytest.mark.parametrize("G", [symmetric(4), dihedral(6), quaternion(16)])
def test_centralizers_match_brute_force(G):
    for H in all_subgroups(G):
        assert set(centralizer(G, H).elements.tolist()) == brute_centralizer(G, H)


def test_center_and_derived():
    S4 = symmetric(4)
    assert center(S4).order == 1
    assert derived_subgroup(S4).order == 12
    assert derived_subgroup(S4, derived_subgroup(S4)).order == 4
    Q = quaternion(8)
    assert center(Q) == derived_subgroup(Q)
    assert commutator_subgroup(Q, whole(Q), center(Q)) == trivial(Q)


def test_normality(D4):
    subs = all_subgroups(D4)
    assert sum(is_normal(D4, H) for H in subs) == 6
    assert sum(is_abelian(H) for H in subs) == 9
    reflection = next(H for H in subs if H.order == 2 and not is_normal(D4, H))
    assert normal_closure(D4, reflection.elements).order == 4


def test_setwise_product_of_non_normal_pair():
    S3 = symmetric(3)
    twos = [H for H in all_subgroups(S3) if H.order == 2]
    prod = setwise_product(S3, twos[0], twos[1])
    assert bitset.popcount(prod) == 4


def test_bicentralizer_family_closed(D4):
    fam = bicentralizer_family(D4)
    members = set(fam.members)
    for a in members:
        for b in members:
            assert a & b in members
    for M in members:
        assert centralizer(D4, centralizer(D4, M)) == M


def test_intersection_closure_cap():
    seeds = [(1 << 20) - 1 - (1 << k) for k in range(1, 20)]
    with pytest.raises(FamilyCapExceeded):
        intersection_closure(seeds, (1 << 20) - 1, cap=100)

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cdlab import bitset
from cdlab.bilinear import BilinearModel, form_rank, radical, restricted_data
from cdlab.constructions import bigex_data, extraspecial_data, heisenberg_data, width2_abelian_data
from cdlab.errors import RadicalNotTrivial
from cdlab.groups import Class2Data, from_class2_data
from cdlab.subgroups import Subgroup, all_subgroups, bicentralizer_family, centralizer

MODELS = {
    "heis(2,2)": BilinearModel(heisenberg_data(2, 2)),
    "heis(3,1)": BilinearModel(heisenberg_data(3, 1)),
    "width2(2)": BilinearModel(width2_abelian_data(2)),
    "bigex(3)": BilinearModel(bigex_data(3)),
}


def test_radical():
    assert len(radical(extraspecial_data(5))) == 0
    data = extraspecial_data(3).direct_sum(Class2Data(3, 1, 1, [[[0]]]))
    assert len(radical(data)) == 1
    with pytest.raises(RadicalNotTrivial):
        BilinearModel(data)
    assert form_rank(bigex_data(3)) == 6


def subspace(model, rows):
    return model.span_bits(np.array(rows, dtype=np.int64).reshape(-1, model.d) % model.p)


@pytest.mark.parametrize("name", sorted(MODELS))
@given(data=st.data())
def test_centralizer_is_perp(name, data):
    M = MODELS[name]
    k = data.draw(st.integers(0, 3))
    rows = data.draw(st.lists(st.lists(st.integers(0, M.p - 1), min_size=M.d, max_size=M.d),
                              min_size=k, max_size=k))
    V = subspace(M, rows)
    C = M.centralizer_bits(V)
    assert C == M.fast_centralizer_bits(V)
    assert M.dim_of(C) >= M.d - M.e * M.dim_of(V)
    # perp contains V^perp^perp and nondegeneracy gives C(C(V)) = closure >= V
    CC = M.centralizer_bits(C)
    assert bitset.is_subset(V, CC)
    assert M.centralizer_bits(CC) == C
    # B(u, v) = 0 for u in V, v in C
    for u in M.vectors[bitset.to_indices(V, M.size)][:6]:
        for v in M.vectors[bitset.to_indices(C, M.size)][:6]:
            assert not M.data.form(u, v).any()


@pytest.mark.parametrize("data", [extraspecial_data(3), heisenberg_data(2, 2)])
def test_model_centralizers_match_group(data):
    G = from_class2_data(data)
    M = BilinearModel(data)
    for H in all_subgroups(G) if G.order <= 128 else []:
        if not bitset.is_subset(G.central_bits(), H.bits):
            continue
        u_bits = bitset.from_indices(np.unique(H.elements % M.size), M.size)
        C = centralizer(G, H)
        assert M.to_group_bits(M.centralizer_bits(u_bits), G) == C.bits


def test_family_and_large_subspaces():
    M = MODELS["heis(2,2)"]
    fam = {S.bits for S in bicentralizer_family(M).members}
    large = set(M.large_closed_subspaces(2))
    assert large == {b for b in fam if M.dim_of(b) >= 2}


def test_orders_and_ids():
    M = MODELS["bigex(3)"]
    V = subspace(M, [[1, 0, 0, 0, 0, 0], [0, 0, 0, 1, 0, 0]])
    assert Subgroup(M, V).order == 9 * 27
    assert M.canonical_id(V) == M.canonical_id(subspace(M, [[1, 0, 0, 1, 0, 0], [0, 0, 0, 2, 0, 0]]))
    assert M.canonical_id(1) == "0"


def test_restricted_data_is_subgroup():
    data = heisenberg_data(2, 2)
    basis = np.array([[1, 0, 0, 0], [0, 0, 1, 0]])
    sub = restricted_data(data, basis)
    assert (sub.d, sub.e) == (2, 2)
    assert sub.form([1, 0], [0, 1]).tolist() == data.form(basis[0], basis[1]).tolist()

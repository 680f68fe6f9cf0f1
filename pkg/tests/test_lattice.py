import pytest
from hypothesis import given, strategies as st

from cdlab.errors import TooLarge
from cdlab.lattice import FiniteLattice, classify_shape, lattice_isomorphic, lattice_product

# subsets of {0, 1, 2} as bitsets: the Boolean lattice 2^3
BOOL3 = FiniteLattice.from_bitsets(list(range(8)))
# pentagon N5: 0 < a < c < 1, 0 < b < 1
N5 = FiniteLattice.from_bitsets([0b000, 0b001, 0b100, 0b011, 0b111])
# diamond M3
M3 = FiniteLattice.from_bitsets([0b000, 0b011, 0b101, 0b110, 0b111])


def test_chain_and_quasi_antichain():
    c = FiniteLattice.chain(3)
    assert c.is_chain() and len(c.covers) == 3
    q = FiniteLattice.quasi_antichain(4)
    assert len(q.atoms()) == 4 and len(q.covers) == 8
    assert q.maximal_chain_lengths() == {2}


def test_modularity():
    assert BOOL3.is_modular() and M3.is_modular()
    assert not N5.is_modular()
    assert N5.find_pentagon() is not None
    assert M3.find_pentagon() is None


def test_not_a_lattice():
    # two incomparable maximal elements
    P = FiniteLattice.from_bitsets([0b00, 0b01, 0b10])
    assert not P.is_lattice()


@given(st.integers(0, 7), st.integers(0, 7))
def test_boolean_join_meet(a, b):
    assert BOOL3.join(a, b) == a | b
    assert BOOL3.meet(a, b) == a & b


def test_product_and_isomorphism():
    two = FiniteLattice.chain(1)
    cube = lattice_product(lattice_product(two, two), two)
    assert lattice_isomorphic(cube, BOOL3)
    assert not lattice_isomorphic(M3, N5)
    assert lattice_isomorphic(FiniteLattice.quasi_antichain(3), M3)
    q = FiniteLattice.quasi_antichain(3)
    assert lattice_product(q, q).n == 25
    with pytest.raises(TooLarge):
        lattice_isomorphic(FiniteLattice.chain(70), FiniteLattice.chain(70))


@given(st.integers(1, 6), st.integers(1, 6))
def test_product_chain_lengths(m, n):
    P = lattice_product(FiniteLattice.chain(m), FiniteLattice.chain(n))
    assert P.maximal_chain_lengths() == {m + n}
    assert P.is_modular()


def test_classify_shape():
    assert classify_shape(FiniteLattice.chain(0)).label() == "Chain(0)"
    assert classify_shape(FiniteLattice.chain(2)).label() == "Chain(2)"
    assert classify_shape(BOOL3).kind == "Other"
    q = FiniteLattice.quasi_antichain(3)
    # orders as in CD(D4): 2, 4, 4, 4, 8; one dual pair and one self-dual atom
    sh = classify_shape(q, [2, 4, 4, 4, 8], [True, True, False, False, False], [4, 1, 3, 2, 0])
    assert (sh.w, sh.t, sh.u) == (3, 1, 1)
    assert (sh.p, sh.a, sh.b) == (2, 1, 1)
    bad = classify_shape(FiniteLattice.quasi_antichain(4), [1, 2, 2, 2, 2, 4], None, None)
    assert bad.violation is not None


def test_intervals_and_sublattice():
    nodes = BOOL3.interval_nodes(0b001, 0b111)
    assert sorted(nodes) == [1, 3, 5, 7]
    sub = BOOL3.sublattice(nodes)
    assert lattice_isomorphic(sub, lattice_product(FiniteLattice.chain(1), FiniteLattice.chain(1)))

import pytest

from cdlab.errors import UnknownSuite
from cdlab.suites import SUITES, SuiteResult, expected_example, run_suite, standard_corpus
from cdlab.constructions import spec


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_passes(name):
    res = run_suite(name, max_order=16)
    assert res.cases, f"{name} checked nothing"
    assert res.passed, res.failures[:5]


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("theorem-x")


def test_standard_corpus_contents():
    labels = {s.label for s in standard_corpus(16)}
    for want in ("(dihedral(4) x dihedral(4))", "(symmetric(4) x symmetric(4))", "unitriangular(4,3)",
                 "bigex(5)", "heisenberg(3,2)", "dihedral(8)"):
        assert want in labels
    assert len(labels) == len(standard_corpus(16))


def test_suite_result():
    r = SuiteResult("x")
    r.add("a", True)
    r.add("b", False, "why")
    assert not r.passed and r.failures == [("b", False, "why")]
    assert r.summary() == "x: 1/2 passed"


def test_expected_example_table():
    assert expected_example(spec("bigex", p=7))["wtu"] == (8, 0, 4)
    assert expected_example(spec("bigex2", p=7))["wtu"] == (8, 2, 3)
    assert expected_example(spec("heisenberg", p=2, n=3))["m_star"] == 2**12
    assert expected_example(spec("cyclic", n=3)) is None

import json

import pytest
from hypothesis import given, strategies as st

from cdlab.constructions import extraspecial_data, spec
from cdlab.errors import ParseError
from cdlab.groupfile import GroupFile, dump, dumps, from_data, from_spec, load, loads

PERM = {"format_version": 1, "backend": "permutation", "degree": 4, "generators": [[1, 2, 3, 0], [3, 2, 1, 0]]}
MATRIX = {"format_version": 1, "backend": "matrix", "modulus": 3, "dim": 3,
          "generators": [[[1, 0, 0], [1, 1, 0], [0, 0, 1]], [[1, 0, 0], [0, 1, 0], [0, 1, 1]]]}


def test_backends_build():
    assert loads(json.dumps(PERM)).build().order == 8
    assert loads(json.dumps(MATRIX)).build().order == 27
    gf = from_data(extraspecial_data(5))
    assert gf.order == 125 and gf.build().order == 125
    gf = from_spec(spec("bigex", p=3))
    assert gf.order == 3**9 and gf.class2_data().d == 6 and gf.label == "bigex(3)"


@pytest.mark.parametrize("obj", [PERM, MATRIX, from_data(extraspecial_data(3)).to_dict(),
                                 from_spec(spec("direct_product", spec("cyclic", n=2), spec("dihedral", n=4))).to_dict()])
def test_canonical_roundtrip(obj):
    text = dumps(loads(json.dumps(obj)))
    assert dumps(loads(text)) == text
    assert loads(text).to_dict() == obj


@given(st.dictionaries(st.text(min_size=1, max_size=8), st.integers(), min_size=1, max_size=3))
def test_unknown_fields_rejected(extra):
    obj = dict(PERM)
    clash = set(extra) & set(obj)
    obj.update(extra)
    if clash == set(extra):
        return
    with pytest.raises(ParseError):
        loads(json.dumps(obj))


@pytest.mark.parametrize("text", [
    "not json",
    "[1, 2]",
    json.dumps({"backend": "permutation", "generators": [[0]]}),
    json.dumps({"format_version": 2, "backend": "permutation", "generators": [[0]]}),
    json.dumps({"format_version": 1, "backend": "cayley"}),
    json.dumps({"format_version": 1, "backend": "matrix", "modulus": 3, "dim": 2}),
    json.dumps({"format_version": 1, "backend": "class2", "p": 2, "d": 2, "e": True, "B": []}),
    json.dumps({"format_version": 1, "backend": "class2", "p": 3, "d": 2, "e": 1, "B": [[[0], [1]], [[1], [0]]]}),
    json.dumps({"format_version": 1, "backend": "construction", "name": "nonsense"}),
    json.dumps({"format_version": 1, "backend": "construction", "name": "bigex", "params": {"q": 3}}),
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        loads(text)


def test_file_io(tmp_path):
    p = tmp_path / "g.json"
    dump(loads(json.dumps(PERM)), p)
    assert load(p).build().order == 8
    with pytest.raises(ParseError):
        load(tmp_path / "missing.json")


def test_groupfile_label():
    assert GroupFile("permutation", {"generators": [[0]]}).label == "permutation"

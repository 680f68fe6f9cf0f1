import json
import subprocess
import sys

import pytest

from cdlab import cli, report
from cdlab.cd import cd_lattice
from cdlab.constructions import dihedral, extraspecial, spec, symmetric
from cdlab.groupfile import dumps, from_spec
from cdlab.report import AnalysisOptions, ResultCache, analyze, analyze_cached, export_dot
from cdlab.verify import VerificationReport


def write(tmp_path, s, name="g.json"):
    path = tmp_path / name
    path.write_text(dumps(from_spec(s)))
    return str(path)


def test_analyze_extraspecial_5():
    rep = analyze(from_spec(spec("extraspecial", p=5, variant="plus")), AnalysisOptions(oracle=True))
    d = rep.to_dict()
    assert d["m_star"] == "625"
    assert d["shape"]["label"] == "QuasiAntichain{w=6,t=6,u=0}"
    assert d["checks"]["oracle"]["passed"] and d["passed"]
    assert d["group"]["order"] == "125" and d["group"]["center_order"] == "5"
    assert all(isinstance(m["order"], str) for m in d["members"])


def test_analyze_s3():
    d = analyze(from_spec(spec("symmetric", n=3))).to_dict()
    assert d["shape"]["label"] == "Chain(0)"
    assert [m["order"] for m in d["members"]] == ["3"]


def test_analyze_bigex3_fast_and_large_m_star():
    d = analyze(from_spec(spec("bigex", p=3))).to_dict()
    assert d["path"] == "fast"
    assert (d["shape"]["w"], d["shape"]["t"], d["shape"]["u"]) == (4, 0, 2)
    assert d["checks"]["constraints"]["passed"]
    d5 = analyze(from_spec(spec("bigex", p=5))).to_dict()
    assert d5["m_star"] == str(5**12)


def test_report_deterministic():
    gf = from_spec(spec("dihedral", n=4))
    assert analyze(gf).to_json() == analyze(gf).to_json()
    timed = analyze(gf, AnalysisOptions(timing=True)).to_dict()
    assert "timing" in timed


def test_dot_examples():
    for G, nodes, edges in [(symmetric(3), 1, 0), (dihedral(4), 5, 6), (extraspecial(3), 6, 8)]:
        text = export_dot(cd_lattice(G))
        assert text.count("[label=") == nodes
        assert text.count("->") == edges
        assert text == export_dot(cd_lattice(G))


def test_cache_hit_is_byte_identical(tmp_path):
    gf = from_spec(spec("extraspecial", p=3, variant="minus"))
    cache = ResultCache(tmp_path / "cache")
    opts = AnalysisOptions(oracle=True)
    text1, ok1, hit1 = analyze_cached(gf, opts, cache)
    text2, ok2, hit2 = analyze_cached(gf, opts, cache)
    assert (hit1, hit2) == (False, True)
    assert text1 == text2 == analyze(gf, opts).to_json()
    assert ok1 and ok2
    assert not list((tmp_path / "cache").glob(".tmp-*"))
    k1 = cache.key(dumps(gf).encode(), opts)
    assert k1 != cache.key(dumps(gf).encode(), AnalysisOptions())


def test_cli_analyze(tmp_path, capsys):
    path = write(tmp_path, spec("extraspecial", p=5, variant="plus"))
    assert cli.main(["analyze", path, "--oracle"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["m_star"] == "625"


def test_cli_cache_env(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, spec("dihedral", n=4))
    monkeypatch.setenv("CDLAB_CACHE_DIR", str(tmp_path / "c"))
    assert cli.main(["analyze", path]) == 0
    first = capsys.readouterr()
    assert cli.main(["analyze", path]) == 0
    second = capsys.readouterr()
    assert first.out == second.out and "cache hit" in second.err
    assert len(list((tmp_path / "c").glob("*.json"))) == 1


def test_cli_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"format_version": 1, "backend": "permutation", "generators": [[0, 0]]}')
    assert cli.main(["analyze", str(bad)]) == 3
    assert cli.main(["verify", "--suite", "nope"]) == 3
    big = write(tmp_path, spec("symmetric", n=6))
    assert cli.main(["analyze", big, "--max-order", "100"]) == 4
    with pytest.raises(SystemExit) as exc:
        cli.main(["analyze"])
    assert exc.value.code == 3


def test_cli_violation_exit(tmp_path, monkeypatch, capsys):
    def broken(L, recompute_top=True):
        r = VerificationReport("lattice axioms")
        r.add("forced failure", False)
        return r
    monkeypatch.setattr(report, "verify_lattice_axioms", broken)
    path = write(tmp_path, spec("dihedral", n=4))
    assert cli.main(["analyze", path]) == 2
    assert json.loads(capsys.readouterr().out)["passed"] is False


def test_cli_verify_and_dot(tmp_path, capsys):
    assert cli.main(["verify", "--suite", "corollary-w6", "-v"]) == 0
    assert "corollary-w6: 3/3 passed" in capsys.readouterr().out
    path = write(tmp_path, spec("dihedral", n=4))
    out = tmp_path / "d4.dot"
    assert cli.main(["dot", path, "--out", str(out)]) == 0
    assert out.read_text().count("->") == 6


def test_cli_make(capsys):
    assert cli.main(["make", "heisenberg", "p=3", "n=2"]) == 0
    text = capsys.readouterr().out
    assert json.loads(text)["params"] == {"n": 2, "p": 3}
    assert cli.main(["make", "heisenberg", "p=3", "bogus=1"]) == 3
    assert cli.main(["make", "bigex", "p"]) == 3


def test_console_entry_point(tmp_path):
    path = write(tmp_path, spec("symmetric", n=3))
    res = subprocess.run([sys.executable, "-m", "cdlab.cli", "analyze", path], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["shape"]["label"] == "Chain(0)"

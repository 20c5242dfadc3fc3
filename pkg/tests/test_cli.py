import io
import json
import re

import pytest

from sdlattice.cli import main
from sdlattice.constructions import catalog, snake
from sdlattice.io import BadLatticeFile, dumps, lattice_from_dict, report_dict, to_dot


def run(capsys, monkeypatch, argv, stdin=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def s0_file(tmp_path):
    p = tmp_path / "s0.json"
    p.write_text(json.dumps(catalog("s0").lattice.to_dict()))
    return str(p)


def test_analyze_s0(capsys, monkeypatch, s0_file):
    code, out, _ = run(capsys, monkeypatch, ["analyze", s0_file, "--json"])
    d = json.loads(out)
    assert code == 0
    assert d["sd_join"] and d["sd_meet"] and d["whitman"] and d["dismantlable"]
    assert d["planar"] is False


@pytest.mark.parametrize("name", ["s0", "crowned-w", "stage1"])
def test_catalog_round_trip(capsys, monkeypatch, name):
    code, text, _ = run(capsys, monkeypatch, ["catalog", "get", name])
    assert code == 0
    code, out, _ = run(capsys, monkeypatch, ["analyze", "-", "--json"], stdin=text)
    assert code == 0
    assert out.strip() == dumps(report_dict(catalog(name).lattice))


def test_crowned_w_pipeline(capsys, monkeypatch):
    _, text, _ = run(capsys, monkeypatch, ["catalog", "get", "crowned-w"])
    code, out, _ = run(capsys, monkeypatch, ["analyze", "-", "--json"], stdin=text)
    d = json.loads(out)
    assert not d["sd_join"] and d["whitman"]
    assert d["crowned_cycles"] and len(d["witnesses"]["sd_join"]) == 3
    code, out, _ = run(capsys, monkeypatch, ["crowned", "-"], stdin=text)
    assert code == 0 and "<a; {b, b'}>" in out


def test_fl_verbs(capsys, monkeypatch):
    assert run(capsys, monkeypatch, ["fl", "leq", "x", "x+y"])[:2] == (0, "true\n")
    assert run(capsys, monkeypatch, ["fl", "leq", "x+y", "x"])[:2] == (0, "false\n")
    assert run(capsys, monkeypatch, ["fl", "canon", "x(x+y)"])[:2] == (0, "x\n")
    code, out, _ = run(capsys, monkeypatch, ["fl", "verify-s0", "--json"])
    assert code == 0 and json.loads(out)["ok"]
    assert run(capsys, monkeypatch, ["fl", "leq", "x"])[0] == 2
    assert run(capsys, monkeypatch, ["fl", "canon", "a + + b"])[0] == 3


def test_other_verbs(capsys, monkeypatch, s0_file):
    assert run(capsys, monkeypatch, ["validate", s0_file])[0] == 0
    code, out, _ = run(capsys, monkeypatch, ["kappa", s0_file, "--json"])
    assert code == 0 and json.loads(out)["complete"]
    code, out, _ = run(capsys, monkeypatch, ["cycles", s0_file, "--json"])
    assert json.loads(out) == {"sd": True, "c_cycles": []}
    code, out, _ = run(capsys, monkeypatch, ["minimal-pairs", s0_file, "--max-n", "3", "--json"])
    d = json.loads(out)
    assert code == 0 and d["minimal_pairs"] and d["cycles"] == []
    code, out, _ = run(capsys, monkeypatch, ["snake", "1"])
    assert json.loads(out) == snake(1).to_dict()
    code, out, _ = run(capsys, monkeypatch, ["double", s0_file, "--interval", "C,C"])
    assert json.loads(out)["n"] == 16
    code, out, _ = run(capsys, monkeypatch, ["enumerate", "5", "--json"])
    assert len(json.loads(out)) == 5
    code, out, _ = run(capsys, monkeypatch, ["catalog", "list"])
    assert "crowned-w" in out.split()


def test_check_suites(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["check", "lemmas", "--max-size", "5", "--json"])
    d = json.loads(out)
    assert code == 0 and d["enumeration_agrees"] and all(r["holds"] for r in d["lemmas"])
    code, out, _ = run(capsys, monkeypatch, ["check", "free", "--samples", "50", "--seed", "4", "--json"])
    assert code == 0 and json.loads(out) == {"seed": 4, "samples": 50, "failures": 0}


def test_exit_codes(capsys, monkeypatch, tmp_path):
    assert run(capsys, monkeypatch, ["frobnicate"])[0] == 2
    assert run(capsys, monkeypatch, [])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"n": 3, "covers": [[0, 1], [0, 2]]}')
    assert run(capsys, monkeypatch, ["validate", str(bad)])[0] == 3
    assert run(capsys, monkeypatch, ["validate", str(tmp_path / "missing.json")])[0] == 3
    assert run(capsys, monkeypatch, ["validate", "-"], stdin="not json")[0] == 3
    assert run(capsys, monkeypatch, ["catalog", "get", "nope"])[0] == 3


def test_lattice_file_format():
    with pytest.raises(BadLatticeFile):
        lattice_from_dict({"n": 2, "covers": [[0, 1]], "extra": 1})
    with pytest.raises(BadLatticeFile):
        lattice_from_dict({"n": 2})
    with pytest.raises(BadLatticeFile):
        lattice_from_dict({"n": "2", "covers": []})
    L = lattice_from_dict({"n": 2, "covers": [[0, 1]], "names": ["lo", "hi"]})
    assert L.name(1) == "hi"


@pytest.mark.parametrize("name", ["s0", "crowned-w"])
def test_dot_has_one_edge_per_cover(name):
    L = catalog(name).lattice
    dot = to_dot(L)
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")
    assert dot.count("{") == dot.count("}")
    edges = re.findall(r"^\s*(\d+) -> (\d+);$", dot, re.M)
    assert sorted((int(u), int(v)) for u, v in edges) == sorted(L.covers)

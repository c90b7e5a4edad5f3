import json

import pytest

from hypermod import cli
from hypermod.hypercore import parse, to_json


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--example", "triple_tail", "--json")
    data = json.loads(out)
    assert code == 0
    assert data["strength"] == "1/2" and data["arboricity"] == "1" and not data["homogeneous"]


def test_info_disconnected(tmp_path, capsys):
    f = tmp_path / "h.txt"
    f.write_text("a b\nc d e\n")
    code, out, _ = run(capsys, "info", "--input", str(f), "--format", "lines")
    assert code == 0 and "component 2" in out


def test_strength_and_arboricity(capsys):
    code, out, _ = run(capsys, "strength", "--example", "triangle")
    assert code == 0 and out.startswith("S = 3/2")
    code, out, _ = run(capsys, "arboricity", "--example", "pendant_triangle", "--json")
    assert json.loads(out)["arboricity"] == "3/2"


def test_weights_file(tmp_path, capsys):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"e1": 1, "e2": "2"}))
    code, out, _ = run(capsys, "strength", "--example", "twin_triples", "--weights", str(w), "--json")
    assert json.loads(out)["strength"] == "3/2"


def test_rank(capsys):
    code, out, _ = run(capsys, "rank", "--example", "twin_triples", "--edges", "e1", "--json")
    data = json.loads(out)
    assert data["rank"] == 1 and data["matroid_strength"] == "1"


def test_hypertrees(capsys):
    code, out, _ = run(capsys, "hypertrees", "--example", "twin_triples", "--json")
    assert json.loads(out)["count"] == 3
    code, out, _ = run(capsys, "hypertrees", "--example", "twin_triples", "--family", "tree")
    assert out.startswith("1 hypertrees")


def test_mod(capsys):
    code, out, _ = run(capsys, "mod", "--example", "triangle", "--p", "1", "--family", "tree", "--json")
    assert json.loads(out)["value"] == "3/2"
    code, out, _ = run(capsys, "mod", "--example", "triangle", "--json")
    data = json.loads(out)
    assert data["value"] == pytest.approx(0.75)
    assert all(v == pytest.approx(2 / 3) for v in data["eta_star"].values())
    code, out, _ = run(capsys, "mod", "--example", "triangle")
    assert out.startswith("Mod_2(Ω(H))")


def test_blocker(capsys):
    code, out, _ = run(capsys, "blocker", "--example", "path", "--json")
    assert code == 0 and len(json.loads(out)) == 2
    code, out, _ = run(capsys, "blocker", "--example", "path")
    assert out.startswith("2 blocker elements")


def test_decompose(tmp_path, capsys):
    dot = tmp_path / "tree.dot"
    code, out, _ = run(capsys, "decompose", "--example", "triple_tail", "--dot", str(dot))
    assert code == 0 and out.strip().endswith("levels: 2, 1")
    assert dot.read_text().startswith("digraph")
    code, out, _ = run(capsys, "decompose", "--example", "triple_tail", "--json")
    assert json.loads(out)["distinct_levels"] == ["2", "1"]


def test_shrink(capsys):
    code, out, _ = run(capsys, "shrink", "--example", "pendant_triangle", "--json")
    steps = json.loads(out)["steps"]
    assert len(steps) == 1 and steps[0]["eta_min"] == "2/3"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--example", "triple_tail")
    assert code == 0 and "FAIL" not in out and "PASS" in out
    code, out, _ = run(capsys, "verify", "--example", "triangle", "--json")
    assert {row["status"] for row in json.loads(out)} <= {"PASS", "SKIP"}


def test_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("a b c\nc d\n"))
    code, out, _ = run(capsys, "strength", "--input", "-", "--format", "lines", "--json")
    assert json.loads(out)["strength"] == "1/2"


def test_json_round_trip(tmp_path, capsys):
    from hypermod import datasets

    h = datasets.load("three_level")
    f = tmp_path / "h.json"
    f.write_text(to_json(h))
    assert parse(f.read_text()) == h
    code, out, _ = run(capsys, "info", "--input", str(f), "--json")
    assert json.loads(out)["strength"] == "2/3"


def test_exit_codes(tmp_path, capsys):
    assert run(capsys, "info", "--input", str(tmp_path / "missing.json"))[0] == cli.EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "info", "--input", str(bad))[0] == cli.EXIT_INPUT
    assert run(capsys, "mod", "--example", "triple_tail", "--family", "tree")[0] == cli.EXIT_INFEASIBLE
    assert run(capsys, "rank", "--example", "three_level", "--cap-edges", "4")[0] == cli.EXIT_CAPACITY
    assert run(capsys, "mod", "--example", "triangle", "--tol", "0")[0] == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        cli.main(["nope", "--example", "triangle"])
    assert info.value.code == 2

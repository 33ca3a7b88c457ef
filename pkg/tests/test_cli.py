import json

import numpy as np
import pytest

from linrel import relation as rel
from linrel.cli import main


def _write(path, data):
    path.write_text(json.dumps(data))
    return str(path)


def test_laws_text(capsys):
    assert main(["laws", "--trials", "1", "--seed", "0"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert sum(line.startswith("PASS") for line in out) == 23
    assert out[-1] == "23/23 laws passed"


def test_laws_json_file(tmp_path):
    out = tmp_path / "r.json"
    assert main(["laws", "--trials", "1", "--max-dim", "3", "--format", "json", "--out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert len(data) == 23 and all(r["passed"] and r["elapsed"] is None for r in data)


def test_laws_timing(capsys):
    assert main(["laws", "--trials", "1", "--max-dim", "2", "--format", "json", "--timing"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert all(isinstance(r["elapsed"], float) for r in data)


@pytest.mark.parametrize("argv", [
    ["laws", "--trials", "0"],
    ["laws", "--max-dim", "13"],
    ["laws", "--format", "csv", "--trials", "1"],
    ["demo", "nosuch"],
    ["frobnicate"],
    ["laws", "--rank-tol", "-1"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_demo_example1(capsys):
    assert main(["demo", "example1"]) == 0
    out = capsys.readouterr().out
    assert "seed=7" in out and "CHAIN EQUAL" in out


def test_demo_example1_json(capsys):
    assert main(["demo", "example1", "--seed", "3", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["seed"] == 3 and data["equal"] and len(data["members"]) == 4


def test_demo_example2_csv(capsys):
    assert main(["demo", "example2", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("n,gamma") and len(lines) == 6


def test_demo_example2_max_n(capsys):
    assert main(["demo", "example2", "--max-n", "128", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [r["n"] for r in data["rows"]] == [4, 8, 16, 32, 64, 128]
    assert data["trend"] == "decaying_to_zero"


def test_rel_adjoint_identity(tmp_path, capsys):
    src = _write(tmp_path / "i.json", {"matrix": [[1, 0], [0, 1]]})
    out = tmp_path / "o.json"
    assert main(["rel", "adjoint", "--in", src, "--out", str(out)]) == 0
    assert "dim=2" in capsys.readouterr().out
    A = rel.relation_from_dict(json.loads(out.read_text()))
    assert rel.equal(A, rel.identity(2))


def test_rel_transpose(tmp_path, capsys):
    M = [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]
    src = _write(tmp_path / "m.json", {"matrix": M})
    assert main(["rel", "adjoint", "--in", src]) == 0
    payload = capsys.readouterr().out.splitlines()[1]
    A = rel.relation_from_dict(json.loads(payload))
    assert rel.equal(A, rel.from_matrix(np.array(M).T))


def test_rel_row_codomain_mismatch(tmp_path, capsys):
    a = _write(tmp_path / "a.json", {"matrix": [[1.0]]})
    b = _write(tmp_path / "b.json", {"matrix": [[1.0], [2.0]]})
    assert main(["rel", "row", "--in", a, "--in", b]) == 1
    assert "codomain" in capsys.readouterr().err


def test_rel_arity(tmp_path):
    a = _write(tmp_path / "a.json", {"matrix": [[1.0]]})
    assert main(["rel", "row", "--in", a]) == 2


def test_rel_block(tmp_path, capsys):
    blocks = {"A11": {"matrix": [[1.0]]}, "A12": {"matrix": [[2.0]]},
              "A21": {"matrix": [[3.0]]}, "A22": {"matrix": [[4.0]]}}
    src = _write(tmp_path / "b.json", blocks)
    out = tmp_path / "o.json"
    assert main(["rel", "block", "--in", src, "--out", str(out)]) == 0
    A = rel.relation_from_dict(json.loads(out.read_text()))
    assert rel.equal(A, rel.from_matrix(np.array([[1.0, 2.0], [3.0, 4.0]])))


def test_rel_block_shape_error(tmp_path, capsys):
    blocks = {"A11": {"matrix": [[1.0]]}, "A12": {"matrix": [[2.0]]},
              "A21": {"matrix": [[3.0]]}, "A22": {"matrix": [[4.0, 5.0]]}}
    assert main(["rel", "block", "--in", _write(tmp_path / "b.json", blocks)]) == 1
    assert "A22" in capsys.readouterr().err


def test_rel_parse_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["rel", "inverse", "--in", str(bad)]) == 2
    assert main(["rel", "inverse", "--in", str(tmp_path / "missing.json")]) == 2
    assert main(["rel", "inverse", "--in", _write(tmp_path / "x.json", {"foo": 1})]) == 2


def test_tolerance_override(tmp_path, capsys):
    src = _write(tmp_path / "m.json", {"matrix": [[1.0, 0.0], [0.0, 1e-9]]})
    assert main(["rel", "inverse", "--in", src, "--rank-tol", "1e-6"]) == 0

import json

import pytest

from qf.catalog import catalog_entries, parse_group, parse_quandle
from qf.cli import main
from qf.cohomology import FiniteAbelianCoefficients, cohomology_group
from qf.dynamical import product_dynamical
from qf.errors import ShapeMismatch
from qf.io import (
    cochain_from_json, cochain_to_json, dynamical_from_json, dynamical_to_json, group_from_json, group_to_json,
    quandle_from_json, quandle_to_json,
)
from qf.quandle import dihedral_quandle, trivial_quandle


def test_group_and_quandle_round_trip():
    G = parse_group("Z2xZ4")
    assert group_from_json(group_to_json(G)).table == G.table
    X = parse_quandle("conj:S3")
    assert quandle_from_json(json.loads(json.dumps(quandle_to_json(X)))).table == X.table


def test_dynamical_round_trip():
    c = product_dynamical(dihedral_quandle(3), trivial_quandle(2))
    back = dynamical_from_json(json.loads(json.dumps(dynamical_to_json(c))))
    assert back.alpha == c.alpha


def test_cochain_round_trip():
    A = FiniteAbelianCoefficients((2, 4))
    H = cohomology_group(trivial_quandle(2), 2, A)
    table = H.to_table(H.representative(H.classes()[-1]))
    back, A2 = cochain_from_json(json.loads(json.dumps(cochain_to_json(table, A))), 2)
    assert back == table and A2 == A


def test_cochain_rejects_bad_entries():
    with pytest.raises(ShapeMismatch):
        cochain_from_json({"degree": 2, "entries": [[0, 5, [1]]]}, 2, FiniteAbelianCoefficients((2,)))
    with pytest.raises(ShapeMismatch):
        cochain_from_json({"degree": 3, "entries": []}, 2)


def test_catalog_entries_build():
    for e in catalog_entries():
        assert e.build().size >= 1


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_quandle_check(capsys):
    code, out = run(capsys, "quandle", "check", "--spec", "dihedral:4")
    assert code == 0 and out.startswith("PASS")


def test_cli_bad_table_fails(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"size": 2, "table": [[0, 0], [0, 1]]}))
    code, out = run(capsys, "quandle", "check", "--spec", f"@{path}")
    assert code == 1 and "FAIL" in out and "witness" in out


def test_cli_usage_errors(tmp_path, capsys):
    assert main(["no-such-command"]) == 2
    assert main(["quandle", "check", "--spec", "nothing:3"]) == 2
    path = tmp_path / "broken.json"
    path.write_text("{")
    assert main(["quandle", "check", "--spec", f"@{path}"]) == 2
    capsys.readouterr()


def test_cli_wells_abelian_all_cocycles(capsys):
    code, out = run(capsys, "wells-abelian", "--quandle", "trivial:2", "--coeff", "Z2", "--all-cocycles")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4 and all(l.startswith("PASS") for l in lines)


def test_cli_cocycle_file(tmp_path, capsys):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"degree": 2, "entries": [[0, 1, [1]]]}))
    code, out = run(capsys, "wells-abelian", "--quandle", "trivial:2", "--coeff", "Z2", "--cocycle", str(path))
    assert code == 0 and out.startswith("PASS")
    assert main(["wells-abelian", "--quandle", "dihedral:3", "--coeff", "Z2", "--cocycle", str(path)]) == 2


def test_cli_json_lines(capsys):
    code, out = run(capsys, "--json", "cohomology", "--quandle", "trivial:2", "--coeff", "Z2,Z3")
    rows = [json.loads(l) for l in out.strip().splitlines()]
    assert code == 0 and [r["order"] for r in rows] == [4, 9]


def test_cli_cap_is_skipped(capsys):
    code, out = run(capsys, "--max-quandle", "3", "quandle", "aut", "--spec", "dihedral:5")
    assert code == 0 and out.startswith("SKIPPED")
    assert main(["--strict", "--max-quandle", "3", "quandle", "aut", "--spec", "dihedral:5"]) == 1
    capsys.readouterr()


@pytest.mark.parametrize("argv", [
    ["adjoint", "r4-report"],
    ["adjoint", "count", "--quandle", "dihedral:3", "--group", "S3", "--word", "core"],
    ["adjoint", "transport", "--ext", "Z4:0,2", "--word", "core"],
    ["adjoint", "transport", "--ext", "D4:center", "--word", "conj:1"],
    ["bridge", "lambda", "--group", "Z2", "--coeff", "Z2", "--twists", "5"],
    ["bridge", "gamma", "--group", "S3", "--coeff", "Z2", "--twists", "5"],
    ["bridge", "naturality", "--group", "S3", "--conj", "1"],
    ["wells-dynamical", "--quandle", "dihedral:3", "--fiber", "trivial:2"],
    ["extension", "fibers", "--quandle", "dihedral:5", "--fiber", "dihedral:3"],
    ["theta", "derivation", "--quandle", "trivial:2", "--coeff", "Z2", "--semidirect"],
])
def test_cli_reports_pass(argv, capsys):
    code, out = run(capsys, *argv)
    assert code == 0, out
    assert all(l.startswith("PASS") for l in out.strip().splitlines())


def test_cli_info_commands(capsys):
    code, out = run(capsys, "--json", "quandle", "iso", "--spec", "core:Z4", "--target", "dihedral:4")
    assert code == 0 and json.loads(out)["isomorphic"]
    code, out = run(capsys, "--json", "adjoint", "abelianize", "--quandle", "dihedral:4")
    assert json.loads(out)["invariant_factors"] == [0, 0]
    code, out = run(capsys, "--json", "bridge", "h2group", "--group", "V4")
    assert json.loads(out)["order"] == 8
    code, out = run(capsys, "catalog", "list")
    assert code == 0 and "dihedral:8" in out

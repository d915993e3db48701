"""Tests for the command-line interface."""

import json

from rank3ribbon.cli import run


def _capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_ring_command(capsys):
    code, out, err = _capture(capsys, ["ring", "--params", "0,1,0,1"])
    assert code == 0 and not err
    payload = json.loads(out)
    assert payload["galois"]["tag"] == "Trivial"
    assert payload["fp_dimensions"] == ["1", "1", "2"]
    assert payload["axioms"]["associativity"] is True
    assert payload["global_fp_dim"]["approx"] == "6"


def test_ring_command_star_violation(capsys):
    code, out, err = _capture(capsys, ["ring", "--params", "1,1,2,0"])
    assert code == 1
    error = json.loads(err)
    assert error["error"]["kind"] == "StarViolation"


def test_usage_errors(capsys):
    code, _out, err = _capture(capsys, ["ring", "--params", "1,2,3"])
    assert code == 2 and "usage error" in err
    code2, _, _ = _capture(capsys, ["ring", "--params", "a,b,c,d"])
    assert code2 == 2
    code3, _, _ = _capture(capsys, ["nonsense"])
    assert code3 == 2


def test_enumerate_command(capsys):
    code, out, _ = _capture(capsys, ["enumerate", "--bound", "1"])
    assert code == 0
    payload = json.loads(out)
    assert payload["solutions"] == [[0, 1, 0, 0], [0, 1, 0, 1], [1, 1, 0, 1]]
    assert payload["aliases"]["K(1,1,0,1)"] == ["K(1,1,0,1)", "K(1,1,1,0)"]


def test_search_command(capsys):
    code, out, _ = _capture(
        capsys, ["search", "--params", "0,1,0,0", "--max-twist-order", "16"]
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == 16
    assert all(w["structure_class"] == "Modular" for w in payload["witnesses"])
    assert all(w["twists"][1] == {"p": 1, "q": 2} for w in payload["witnesses"])
    assert all(w["twists"][2]["q"] == 16 for w in payload["witnesses"])


def test_search_command_empty(capsys):
    code, out, _ = _capture(
        capsys, ["search", "--params", "0,1,0,2", "--max-twist-order", "16"]
    )
    assert code == 0
    assert json.loads(out)["count"] == 0


def test_classify_command_and_out_file(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = _capture(
        capsys,
        ["classify", "--bound", "1", "--max-twist-order", "16", "--out", str(target)],
    )
    assert code == 0 and str(target) in out
    payload = json.loads(target.read_text())
    assert payload["admissible"] == ["Z/3", "K(0,1,0,0)", "K(0,1,0,1)", "K(1,1,0,1)"]
    assert "exactly 7" in payload["limitation"]


def test_classify_table_format(capsys):
    code, out, _ = _capture(
        capsys, ["classify", "--bound", "1", "--max-twist-order", "4", "--format", "table"]
    )
    assert code == 0
    assert "K(0,1,0,1)" in out and "admissible" in out


def test_audit_commands(capsys):
    code, out, _ = _capture(capsys, ["audit", "landau", "--classes", "3"])
    assert code == 0 and json.loads(out)["bound"] == 6

    code, out, _ = _capture(capsys, ["audit", "case3b-grid", "--smax", "5", "--tmax", "5"])
    assert code == 0 and json.loads(out)["no_solutions"] is True

    code, out, _ = _capture(capsys, ["audit", "star-assoc", "--bound", "3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True and payload["mismatches"] == []

    code, out, _ = _capture(capsys, ["audit", "rank3-rings", "--coeff-bound", "1"])
    assert code == 0 and json.loads(out)["count"] == 4


def test_json_output_deterministic(capsys):
    _, first, _ = _capture(capsys, ["search", "--params", "0,1,0,1", "--max-twist-order", "6"])
    _, second, _ = _capture(capsys, ["search", "--params", "0,1,0,1", "--max-twist-order", "6"])
    assert first == second
    _, third, _ = _capture(
        capsys,
        ["search", "--params", "0,1,0,1", "--max-twist-order", "6", "--threads", "3"],
    )
    assert first == third


def test_every_number_exact_or_approx_labeled(capsys):
    """Numeric payload fields carry exact representations or approx markers."""
    _, out, _ = _capture(capsys, ["ring", "--params", "0,1,0,0"])
    payload = json.loads(out)
    char = payload["characters"][0]
    assert "minpoly_y" in char and "interval_y" in char and "approx_y" in char
    assert "non-authoritative" in char["approx_note"]
    _, out2, _ = _capture(capsys, ["search", "--params", "0,1,0,0", "--max-twist-order", "16"])
    witness = json.loads(out2)["witnesses"][0]
    assert witness["smatrix"]["entries"][0][0]["note"] == "approx"
    assert witness["twists"][2] == {"p": witness["twists"][2]["p"], "q": 16}

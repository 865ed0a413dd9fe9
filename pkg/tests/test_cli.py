from __future__ import annotations

import io
import json
import sys

import pytest

from hodgecalc.cli import main
from hodgecalc.errors import ParseError, SchemaError
from hodgecalc.schemas import (
    fixture_names, load_fixture, parse_problem_text, render_problem,
)


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fixture_catalog():
    names = fixture_names()
    assert "dollar-bill" in names
    assert "grassmannian-g24" in names


def test_parse_round_trip():
    for name in fixture_names():
        doc = load_fixture(name)
        again = parse_problem_text(render_problem(doc))
        assert again.kind == doc.kind
        assert again.payload == doc.payload
        assert again.canonical_json() == doc.canonical_json()


def test_parse_dollar_bill_shape():
    doc = load_fixture("dollar-bill")
    assert doc.kind == "orbit"
    assert doc.obj.dim == 4 and doc.obj.num_params == 3


def test_empty_input_is_parse_error():
    with pytest.raises(ParseError):
        parse_problem_text("")


def test_noncommuting_is_schema_error():
    doc = json.dumps({
        "kind": "orbit",
        "payload": {
            "dim": 2, "weight": 1,
            "Q": [["0", "1"], ["-1", "0"]],
            "nilpotents": [[["0", "1"], ["0", "0"]], [["0", "0"], ["1", "0"]]],
            "F": [[["0", "1"]], [["1", "0"], ["0", "1"]]],
        }})
    with pytest.raises(SchemaError) as err:
        parse_problem_text(doc)
    assert "commute" in str(err.value)


def test_metric_poly_command(capsys):
    code, out, err = run_cli(
        ["metric-poly", "--input", "builtin:dollar-bill"], capsys)
    assert code == 0
    assert "x1*x2 + x1*x3 + x2*x3" in out


def test_stratum_map_command(capsys):
    code, out, err = run_cli(
        ["stratum-map", "--input", "builtin:dollar-bill", "--stratum", "1"],
        capsys)
    assert code == 0
    assert "t2*t3" in out


def test_limit_check_command(capsys):
    code, out, err = run_cli(
        ["limit-check", "--input", "builtin:dollar-bill", "--stratum", "3",
         "--scales", "1e1..1e8", "--format", "json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["flags"]["eventuallyDecreasing"]
    assert data["flags"]["withinTolerance"]


def test_exit_code_schema_error(capsys):
    code, out, err = run_cli(["metric-poly"], capsys)
    assert code == 2
    assert "error" in err


def test_exit_code_unknown_subcommand(capsys):
    code, out, err = run_cli(["frobnicate", "--input", "builtin:dollar-bill"],
                             capsys)
    assert code == 2


def test_exit_code_failing_check(capsys, tmp_path):
    # flip the polarization: validation fails with exit code 1
    doc = load_fixture("dollar-bill")
    bad = json.loads(render_problem(doc))
    bad["payload"]["Q"] = [[str(-int(x)) for x in row]
                           for row in [[0, 0, 1, 0], [0, 0, 0, 1],
                                       [-1, 0, 0, 0], [0, -1, 0, 0]]]
    path = tmp_path / "flipped.json"
    path.write_text(json.dumps(bad))
    code, out, err = run_cli(["validate", "--input", str(path)], capsys)
    assert code == 1


def test_validate_passes(capsys):
    for name in ("dollar-bill", "commuting-pair", "duplicated-pair",
                 "elliptic-degeneration", "pure-elliptic"):
        code, out, err = run_cli(["validate", "--input", f"builtin:{name}"],
                                 capsys)
        assert code == 0, name


def test_schur_segre_commands(capsys):
    code, out, _ = run_cli(["schur", "--partition", "1,1", "--rank", "3"], capsys)
    assert code == 0 and "c1^2 - c2" in out
    code, out, _ = run_cli(["segre", "--degree", "2", "--rank", "3"], capsys)
    assert code == 0 and "c1^2 - c2" in out


def test_multiplier_ideal_command(capsys):
    code, out, _ = run_cli(
        ["multiplier-ideal", "--input", "builtin:alpha-example"], capsys)
    assert code == 0 and "z1^2*z2" in out


def test_json_reports_are_deterministic(tmp_path, capsys):
    cases = [
        ["metric-poly", "--input", "builtin:dollar-bill"],
        ["chern", "--input", "builtin:dollar-bill", "--seed", "7"],
        ["limit-check", "--input", "builtin:dollar-bill", "--stratum", "3",
         "--scales", "1e1..1e4", "--seed", "7"],
        ["monomial-map", "--input", "builtin:dollar-bill"],
        ["horizontal", "--input", "builtin:weight2-normal-form", "--seed", "5"],
    ]
    for argv in cases:
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        code_a = main(argv + ["--format", "json", "--output", str(a)])
        code_b = main(argv + ["--format", "json", "--output", str(b)])
        capsys.readouterr()
        assert code_a == code_b and code_a in (0, 1)
        assert a.read_bytes() == b.read_bytes()


def test_env_seed(monkeypatch, capsys):
    monkeypatch.setenv("HODGECALC_SEED", "11")
    code, out, _ = run_cli(
        ["chern", "--input", "builtin:dollar-bill", "--format", "json"], capsys)
    assert code == 0
    assert json.loads(out)["seed"] == 11

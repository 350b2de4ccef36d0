import json

import jsonschema
import pytest

from htoeplitz.cli import main

try:
    from importlib.resources import files

    SCHEMA = json.loads(
        files("htoeplitz").joinpath("schema/runreport.schema.json").read_text()
    )
except Exception:  # pragma: no cover
    SCHEMA = None


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_mellin(capsys):
    code, report = run_json(capsys, "mellin", "r^4*ln(r)")
    assert code == 0
    assert report["result"]["result"] == "-1/(z+4)^2"
    assert report["status"] == "ok"


def test_invmellin_negative_literal(capsys):
    code, report = run_json(capsys, "invmellin", "-1/(z+4)^2")
    assert code == 0
    assert report["result"]["result"] == "r^4*ln(r)"


def test_invmellin_improper_is_math_failure(capsys):
    code, report = run_json(capsys, "invmellin", "z+1")
    assert code == 1
    assert report["status"] == "fail"


def test_apply(capsys):
    code, report = run_json(capsys, "apply", "--f", "e(3)*r^3", "--v", "z")
    assert code == 0
    assert report["result"]["image"] == {"z^4": "1"}


def test_commutator_nonzero_exits_1(capsys):
    code, report = run_json(
        capsys, "commutator", "--f", "z^2", "--u", "z + abar1*conj(z)", "--v", "z"
    )
    assert code == 1
    assert report["result"]["residual"] == {"z^2": "-1/4*abar1"}


def test_verify_failure(capsys):
    code, report = run_json(
        capsys, "verify", "--f", "z^2", "--u", "z + abar1*conj(z)", "--nmax", "8"
    )
    assert code == 1
    assert report["result"]["witnesses"]


def test_verify_success(capsys):
    code, report = run_json(
        capsys, "verify",
        "--f", "C1*z + C0 + C1*abar1*conj(z)",
        "--u", "z + abar1*conj(z)",
        "--nmax", "10",
    )
    assert code == 0
    assert report["result"]["commutes"] is True


def test_derive(capsys):
    code, report = run_json(capsys, "derive", "--L", "1", "--N", "3", "--K", "4")
    assert code == 0
    assert report["result"]["survivors"] == ["C1", "C0"]
    assert report["result"]["commutes"] is True


def test_verify_paper_warns_but_passes(capsys):
    code, report = run_json(capsys, "verify-paper", "--tags", "R4.2", "f-1")
    assert code == 0
    assert report["result"]["sound"] is True
    assert any("f-1" in w for w in report["warnings"])


def test_oracle_check(capsys):
    code, report = run_json(
        capsys, "oracle-check", "--cases", "20", "--seed", "3", "--tol", "1e-9"
    )
    assert code == 0
    assert report["result"]["failures"] == []
    assert report["result"]["max_diff"] < 1e-9


def test_oracle_check_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("HTOEPLITZ_SEED", "11")
    from htoeplitz.cli import build_parser

    args = build_parser().parse_args(["oracle-check"])
    assert args.seed == 11


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["derive", "--L", "1"])
    assert exc.value.code == 2


def test_parse_error_exit_2(capsys):
    code, out = run(capsys, "mellin", "r^^")
    assert code == 2


def test_pretty_flag_does_not_change_exit_code(capsys):
    code_json, _ = run(capsys, "verify", "--f", "z^2", "--u", "z + abar1*conj(z)")
    code_pretty, out = run(
        capsys, "--pretty", "verify", "--f", "z^2", "--u", "z + abar1*conj(z)"
    )
    assert code_json == code_pretty == 1
    assert "witness" in out

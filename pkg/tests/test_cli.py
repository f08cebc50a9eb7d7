import sys
from fractions import Fraction

import pytest

from conreal import main
from conreal.arith import pow2
from conreal.cli import parse_real, run
from conreal.errors import InvalidInput
from conreal.reals import approx

CASES = {
    "spread_phi_half": (["spread", "phi", "--path", "1~1", "--prec", "10"], 0),
    "spread_node": (["spread", "node", "--word", "22"], 0),
    "spread_extract_half": (["spread", "extract", "--x", "const:1/2", "--digits", "8"], 0),
    "spread_rho": (["spread", "rho", "--path", "1~2", "--digits", "6"], 0),
    "spread_lift": (["spread", "lift", "--path", "1~1", "--n", "0", "--x", "1/2", "--digits", "5"], 0),
    "cantor_interval": (["cantor", "interval", "--word", "01"], 0),
    "cantor_kappa": (["cantor", "kappa", "--bits", "1~0", "--prec", "10"], 0),
    "cantor_gamma": (["cantor", "gamma", "--path", "1~1", "--digits", "3"], 0),
    "bar_eval_half": (["bar", "eval", "--bar", "{bars}/two-level.txt", "--at", "1/2", "--prec", "10"], 0),
    "bar_bound_two_level": (["bar", "bound", "--bar", "{bars}/two-level.txt"], 0),
    "bar_bound_empty": (["bar", "bound", "--bar", "{bars}/empty.txt", "--cap", "100"], 2),
    "bar_hitting": (["bar", "hitting", "--bar", "{bars}/two-level.txt", "--bits", "1~1", "--cap", "20"], 0),
    "bar_verify": (["bar", "verify", "--bar", "{bars}/two-level.txt", "--bits", "1~1", "--prec", "20"], 0),
    "code_check_identity": (["code", "check", "--code", "builtin:identity", "--depth", "3", "--kmax", "3"], 0),
    "code_eval_const": (["code", "eval", "--code", "builtin:const:1/3", "--at", "1/5", "--prec", "10"], 0),
    "code_locate": (["code", "locate", "--code", "builtin:identity", "--k", "5", "--path", "0~0", "--cap", "20"], 0),
    "code_ucmod": (["code", "ucmod", "--code", "builtin:identity", "--kmax", "3", "--cap", "20"], 0),
    "code_encode": (["code", "encode", "--lo", "0", "--hi", "1"], 0),
    "real_approx": (["real", "approx", "--x", "const:3/8", "--prec", "5"], 0),
    "real_approx_kappa": (["real", "approx", "--x", "kappa:1~0", "--prec", "10"], 0),
    "real_compare": (["real", "compare", "--x", "const:0", "--y", "const:1", "--cap", "5"], 0),
    "real_convert_shrinking": (["real", "convert", "--x", "const:1/2", "--to", "shrinking", "--prec", "3"], 0),
    "real_convert_fundamental": (["real", "convert", "--x", "const:1/2", "--to", "fundamental", "--prec", "4"], 0),
    "real_convert_regular": (["real", "convert", "--x", "1/2", "--to", "regular", "--prec", "4"], 0),
    "bad_digit": (["spread", "phi", "--path", "13"], 3),
    "not_dyadic": (["real", "approx", "--x", "dyadic:1/3"], 3),
    "missing_argument": (["real", "approx"], 3),
}


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys, fixtures_path):
    argv, status = CASES[name]
    argv = [arg.format(bars=fixtures_path / "bars") for arg in argv]
    assert run(argv) == status
    expected = (fixtures_path / "golden" / f"{name}.out").read_text(encoding="utf-8")
    assert capsys.readouterr().out == expected


def test_failures_are_logged(caplog):
    assert run(["spread", "phi", "--path", "13"]) == 3
    assert any(record.getMessage().startswith("❌") for record in caplog.records)


@pytest.mark.parametrize("argv", [
    ["code", "check", "--depth", "-1", "--code", "builtin:identity"],
    ["spread", "extract", "--x", "1/2", "--digits", "0"],
    ["real", "convert", "--x", "1/2", "--to", "decimal"],
    ["nope"],
])
def test_bad_arguments_exit_3(argv):
    assert run(argv) == 3


def test_slow_code_witness_exceeds_cap(capsys):
    assert run(["code", "ucmod", "--code", "builtin:slow", "--kmax", "8", "--cap", "20"]) == 2
    assert capsys.readouterr().out == ""


def test_code_witness_budget(capsys):
    assert run(["code", "ucmod", "--code", "builtin:slow", "--kmax", "3"]) == 0
    assert capsys.readouterr().out == "0 1\n1 2\n2 4\n3 8\n"
    assert run(["code", "ucmod", "--code", "builtin:slow", "--kmax", "3", "--budget", "100"]) == 2
    assert run(["code", "ucmod", "--code", "builtin:identity", "--budget", "0"]) == 3


def test_invalid_code_exits_4(tmp_path, capsys):
    path = tmp_path / "code.txt"
    path.write_text("ε 10\n", encoding="utf-8")
    assert run(["code", "check", "--code", f"file:{path}", "--depth", "1", "--kmax", "0"]) == 4
    assert capsys.readouterr().out.splitlines()[:2] == ["depth 1: 3 violations", "C3 ε 0"]


def test_main_exits_with_status(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["conreal", "code", "encode", "--lo", "0", "--hi", "1"])
    with pytest.raises(SystemExit) as caught:
        main()
    assert caught.value.code == 0
    assert capsys.readouterr().out == "10\n"


@pytest.mark.parametrize("spec, value", [
    ("3/4", Fraction(3, 4)),
    ("const:-1/2", Fraction(-1, 2)),
    ("dyadic:5/8", Fraction(5, 8)),
    ("kappa:~1", Fraction(1)),
    ("phi:2~2", Fraction(1)),
])
def test_parse_real(spec, value):
    assert abs(approx(parse_real(spec), 40) - value) <= pow2(40)


def test_parse_real_rejects():
    for spec in ["sqrt:2", "const:", "kappa:12"]:
        with pytest.raises(InvalidInput):
            approx(parse_real(spec), 3)


def test_non_ascii_digits_exit_3(tmp_path):
    assert run(["spread", "phi", "--path", "1²"]) == 3
    assert run(["real", "approx", "--x", "const:²/3"]) == 3
    path = tmp_path / "code.txt"
    path.write_text("ε ²\n", encoding="utf-8")
    assert run(["code", "check", "--code", f"file:{path}"]) == 3


def test_undecodable_files_exit_3(tmp_path):
    bar = tmp_path / "bar.txt"
    bar.write_bytes(b"0\n\xff1\n")
    assert run(["bar", "bound", "--bar", str(bar)]) == 3
    code = tmp_path / "code.txt"
    code.write_bytes(b"\xff 10\n")
    assert run(["code", "eval", "--code", f"file:{code}", "--at", "1/2"]) == 3


def test_violated_code_is_reported(tmp_path, caplog):
    path = tmp_path / "code.txt"
    path.write_text("ε 10\n", encoding="utf-8")
    assert run(["code", "check", "--code", f"file:{path}", "--depth", "1", "--kmax", "0"]) == 4
    assert f"❌ file:{path} violates the code conditions" in [record.getMessage() for record in caplog.records]

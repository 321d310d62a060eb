"""Exit codes and output of the command line interface."""

import json

import pytest

from ringline.cli import main


def test_sym_verify_exits_zero(capsys):
    assert main(["sym", "verify", "--max-index", "5"]) == 0
    out = capsys.readouterr().out
    assert "PASS right-expansion-e" in out
    assert "FAIL" not in out


def test_sym_epoly_prints_polynomial(capsys):
    assert main(["sym", "epoly", "--n", "3"]) == 0
    assert "x1 x2 x3 - x1 - x3" in capsys.readouterr().out


def test_e2_enumerate(capsys):
    assert main(["e2", "enumerate", "--ring", "zmod4"]) == 0
    assert "|E2(zmod(4))| = 48" in capsys.readouterr().out


def test_jordan_verify(capsys):
    assert main(["jordan", "verify", "--map", "herzer-swap@bm2"]) == 0
    out = capsys.readouterr().out
    assert "PASS classification" in out


def test_jordan_jtest_pass_and_fail(capsys):
    assert main(["jordan", "jtest", "--map", "herzer-swap@bm2",
                 "--poly", "e 1 3 * te 1 2", "--max-len", "3"]) == 0
    capsys.readouterr()
    # a bare window is not symmetric, the swap map must fail it
    code = main(["jordan", "jtest", "--map", "herzer-swap@bm2",
                 "--poly", "e 1 2", "--max-len", "2"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


def test_jordan_jtest_bad_poly():
    assert main(["jordan", "jtest", "--map", "identity@gf4", "--poly", "q 1 2"]) == 2


def test_line_commands(capsys):
    assert main(["line", "enumerate", "--ring", "zmod4", "--limit", "3"]) == 0
    out = capsys.readouterr().out
    assert "6 points" in out
    assert "3 more" in out
    assert main(["line", "graph", "--ring", "zmod6"]) == 0
    assert "1 component" in capsys.readouterr().out
    assert main(["line", "diameter", "--ring", "zmod6"]) == 0
    assert "diameter 2" in capsys.readouterr().out


def test_line_induced(capsys):
    assert main(["line", "induced", "--map", "reduce@zmod4"]) == 0
    out = capsys.readouterr().out
    assert "fundamental-triple" in out
    assert "FAIL" not in out


def test_chains_list(capsys):
    assert main(["chains", "list", "--ring", "gf4", "--subfield", "2"]) == 0
    assert "10 chain(s)" in capsys.readouterr().out


def test_chains_thm52_verdicts(capsys):
    assert main(["chains", "thm52", "--map", "identity@gf4", "--subfield", "2"]) == 0
    capsys.readouterr()
    code = main(["chains", "thm52", "--map", "frobenius@gf4",
                 "--subfield", "4", "--subfield-prime", "2"])
    out = capsys.readouterr().out
    assert code == 2  # preservation and condition both fail
    assert "PASS chain-criterion-biconditional" in out


def test_suite_command_writes_report(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    assert main(["suite", "symbolic", "--report", str(path)]) == 0
    out = capsys.readouterr().out
    assert "symbolic" in out
    head = json.loads(path.read_text().split("\n", 1)[0])
    assert head["kind"] == "ringline-report"
    assert head["failed"] == 0


def test_bad_ring_name_is_config_error(capsys):
    assert main(["e2", "enumerate", "--ring", "zzz"]) == 2
    assert "error" in capsys.readouterr().err


def test_suite_rejects_unknown_name():
    with pytest.raises(SystemExit):
        main(["suite", "nonsense"])

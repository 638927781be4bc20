from pathlib import Path

import pytest

from starheight import cli, verify
from starheight.expr import Lit

F1 = str(Path(__file__).parent / "fixtures" / "f1.rees")
F2 = str(Path(__file__).parent / "fixtures" / "f2.rees")


def call(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count_lang_example(capsys):
    assert call(capsys, "count-lang", "--word", "aa", "--k", "1", "--alphabet", "a") == (0, "aa\nheight: 0\n", "")


def test_count_lang_with_modulus(capsys):
    code, out, _ = call(capsys, "count-lang", "--word", "ab", "--k", "1", "--mod", "2", "--alphabet", "ab")
    assert code == 0 and out.endswith("height: 1\n")


def test_member_example(capsys):
    assert call(capsys, "member", "--expr", "!(!0 aa !0)", "--word", "aba", "--alphabet", "ab")[:2] == (0, "true\n")
    assert call(capsys, "member", "--expr", "a*", "--word", "ε", "--alphabet", "a")[:2] == (0, "true\n")
    assert call(capsys, "member", "--expr", "a", "--word", "b", "--alphabet", "ab")[:2] == (0, "false\n")


def test_height(capsys):
    assert call(capsys, "height", "--expr", "!(!0 a !0)(ab)*", "--alphabet", "ab")[:2] == (0, "height: 1\n")


def test_enum(capsys):
    assert call(capsys, "enum", "--expr", "a*", "--alphabet", "ab", "--max-len", "2")[:2] == (0, "ε\na\naa\n")
    code, _, err = call(capsys, "enum", "--expr", "a*", "--alphabet", "ab", "--max-len", "13")
    assert code == 2 and "cap" in err
    assert call(capsys, "enum", "--expr", "a*", "--alphabet", "a", "--max-len", "13", "--len-cap", "13")[0] == 0


def test_equiv(capsys):
    argv = ["equiv", "--expr1", "b*", "--expr2", "!0 - (!0 a !0)", "--alphabet", "ab", "--max-len", "8"]
    assert call(capsys, *argv)[:2] == (0, "equivalent up to length 8\n")
    argv = ["equiv", "--expr1", "a", "--expr2", "a|aa", "--alphabet", "ab", "--max-len", "3"]
    assert call(capsys, *argv)[:2] == (0, "not equivalent: counterexample aa\n")


def test_tree_flag(capsys):
    code, out, _ = call(capsys, "count-lang", "--word", "ab", "--k", "0", "--alphabet", "ab", "--tree")
    assert code == 0 and out.startswith("Complement\n  Concat\n")


def test_rees_eval(capsys):
    assert call(capsys, "rees", "eval", "--spec", F1, "--word", "ab")[:2] == (0, "1,0,2\n")
    assert call(capsys, "rees", "eval", "--spec", F1, "--word", "ac")[:2] == (0, "zero\n")
    assert call(capsys, "rees", "eval", "--spec", F2, "--word", "ba")[:2] == (0, "2,1,1,2\n")
    assert call(capsys, "rees", "eval", "--spec", F1, "--word", "ε")[0] == 2


def test_rees_preimage_and_recognized(capsys):
    code, out, _ = call(capsys, "rees", "preimage", "--spec", F1, "--element", "zero")
    assert code == 0 and out.endswith("height: 0\n")
    code, out, _ = call(capsys, "rees", "preimage", "--spec", F1, "--element", "1,0,2")
    assert code == 0 and out.endswith("height: 1\n")
    code, out, _ = call(capsys, "rees", "recognized", "--spec", F1, "--elements", "zero;1,0,2")
    assert code == 0 and out.endswith("height: 1\n")
    assert call(capsys, "rees", "recognized", "--spec", F1, "--elements", "")[:2] == (0, "0\nheight: 0\n")


def test_rees_preimage_budget_flag(capsys):
    code, _, err = call(capsys, "rees", "preimage", "--spec", F2, "--element", "1,0,0,1", "--tuple-budget", "1")
    assert code == 2 and "budget" in err


def test_verify_count_example(capsys):
    argv = ["verify", "count", "--word", "aba", "--max-k", "2", "--mod", "2", "--alphabet", "ab", "--max-len", "8"]
    code, out, _ = call(capsys, *argv)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["construction", "words", "mismatches", "height", "bound", "status"]
    assert lines[1].split() == ["Count(aba,0)", "511", "0", "0", "<=0", "ok"]
    assert lines[-1] == "6/6 checks passed"


def test_verify_count_sweeps_all_supported_words(capsys):
    code, out, _ = call(capsys, "verify", "count", "--max-k", "1", "--alphabet", "ab", "--max-len", "5")
    assert code == 0
    # all 14 words of length <= 3 over {a,b} are supported
    assert out.splitlines()[-1] == "28/28 checks passed"


def test_verify_rees(capsys):
    code, out, _ = call(capsys, "verify", "rees", "--spec", F1, "--max-len", "4")
    assert code == 0
    assert out.splitlines()[-1] == "9/9 checks passed"


def test_verify_failure_shows_counterexample(capsys, monkeypatch):
    real = verify.build_count

    def broken(spec, *, cap):
        return Lit("a") if spec.k == 1 else real(spec, cap=cap)

    monkeypatch.setattr(verify, "build_count", broken)
    code, out, _ = call(capsys, "verify", "count", "--word", "ab", "--max-k", "1", "--alphabet", "ab", "--max-len", "3")
    assert code == 1
    assert "FAIL" in out
    assert "counterexample for Count(ab,1): a, ab, aab" in out
    assert out.splitlines()[-1] == "1/2 checks passed"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["height", "--expr", "a("],
        ["height", "--expr", "a(", "--alphabet", "ab"],
        ["height", "--expr", "c", "--alphabet", "ab"],
        ["member", "--expr", "a", "--word", "xy", "--alphabet", "ab"],
        ["count-lang", "--word", "abab", "--k", "1", "--alphabet", "ab"],
        ["count-lang", "--word", "ab", "--k", "2", "--mod", "2", "--alphabet", "ab"],
        ["count-lang", "--word", "a", "--k", "1", "--alphabet", "aa"],
        ["rees", "eval", "--spec", "/nonexistent.rees", "--word", "a"],
        ["rees", "preimage", "--spec", F1, "--element", "9,0,1"],
        ["verify", "count", "--word", "abab", "--max-k", "1", "--alphabet", "ab", "--max-len", "3"],
        ["verify", "count", "--max-k", "1", "--mod", "1", "--alphabet", "ab", "--max-len", "3"],
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert err


def test_output_is_repeatable(capsys):
    argv = ["rees", "recognized", "--spec", F2, "--elements", "1,1,2,2;zero"]
    first = call(capsys, *argv)
    assert first[0] == 0
    assert call(capsys, *argv) == first


def test_main_exits_with_code(monkeypatch, capsys):
    monkeypatch.setattr("sys.argv", ["starheight", "height", "--expr", "a**", "--alphabet", "a"])
    with pytest.raises(SystemExit) as exc:
        cli.main()
    assert exc.value.code == 0
    assert capsys.readouterr().out == "height: 2\n"

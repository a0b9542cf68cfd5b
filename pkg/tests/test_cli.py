import functools
import json

import pytest

from modsys import cli
from modsys.op import LITERAL, OperationalSemantics


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_check(capsys):
    code, out = run(capsys, "check", "appendix.msl")
    assert code == 0
    assert out.splitlines() == [
        "M2: well-formed  sigma={i}  epsilon={a, a', b, b'}",
        "P: well-formed  sigma={i}  epsilon={a, b}",
    ]


def test_check_reports_violations(tmp_path, capsys):
    f = tmp_path / "bad.msl"
    f.write_text(
        "module A : explicit { inputs {} outputs {a} models { {} } }\n"
        "module B : explicit { inputs {} outputs {a} models { {a} } }\n"
        "system S = A >> B;\n"
    )
    code, out = run(capsys, "check", str(f))
    assert code == 2
    assert out.splitlines() == ["S: ill-formed", "  root: OutputInterference: both sides output {a}"]


def test_models_and_json(capsys):
    code, out = run(capsys, "models", "appendix.msl", "--system", "M2")
    assert (code, out) == (0, "{a,a',i}\n{b,b',i}\n{}\n")
    code, out = run(capsys, "models", "appendix.msl", "--system", "M2", "--json")
    data = json.loads(out)
    assert data["models"] == [[], ["a", "a'", "i"], ["b", "b'", "i"]]


def test_expand(capsys):
    assert run(capsys, "expand", "appendix.msl", "--system", "M2", "--instance", "on") == (0, "{a,a',i}\n{b,b',i}\n")
    assert run(capsys, "expand", "coloring.msl", "--system", "Col", "--instance", "k4") == (0, "none exists\n")


def test_op_models_with_fresh_symbols(capsys):
    code, out = run(capsys, "op-models", "appendix.msl", "--system", "P", "--tau", "x, y")
    assert (code, out) == (0, "{a,i}\n{b,i}\n{}\n")


def test_equiv(capsys):
    assert run(capsys, "equiv", "example2.msl", "--system", "M") == (0, "equivalent: 4 models\n")
    assert run(capsys, "equiv", "example2.msl", "--system", "phiM") == (0, "equivalent: 4 models\n")


def test_equiv_reports_a_difference(tmp_path, capsys, monkeypatch):
    f = tmp_path / "c.msl"
    f.write_text("module N : explicit { inputs {r} outputs {s} models { {}, {r, s} } }\nsystem C = ~N[r=s];\n")
    monkeypatch.setattr(cli, "OperationalSemantics", functools.partial(OperationalSemantics, complement=LITERAL))
    code, out = run(capsys, "equiv", str(f), "--system", "C")
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "NOT equivalent" and all(l.startswith(("- mt only", "+ op only")) for l in lines[1:])


def test_trace(capsys):
    code, out = run(capsys, "trace", "appendix.msl", "--system", "M0", "--from", "{i}", "--to", "{i,a}")
    assert code == 0
    assert out.splitlines() == [
        "[primitive] (M0, {i}) -> {a,i}",
        "    where B2|σ∪ε in module: {a,i}",
        "    where unchanged off ε: yes",
    ]
    assert run(capsys, "trace", "appendix.msl", "--system", "M0", "--from", "{i}", "--to", "{i,a,b}") == (0, "not derivable\n")


def test_infer(capsys):
    code, out = run(capsys, "infer", "appendix.msl", "--system", "M0", "--max-premise", "1")
    assert code == 0
    assert out.splitlines() == ["| i => ~a", "| i => ~b", "a => ~b", "a => i", "b => ~a", "b => i"]


def test_propagate(capsys):
    assert run(capsys, "propagate", "appendix.msl", "--system", "M0", "--assume", "i, ~a") == (0, "{~a,b,i}\n")
    code, out = run(capsys, "propagate", "appendix.msl", "--system", "M0", "--assume", "a, ~i")
    assert code == 0 and out.startswith("CONFLICT on ")


def test_selftest(capsys):
    code, out = run(capsys, "selftest")
    assert code == 0
    assert out.splitlines()[-1] == "15/15 checks passed"


@pytest.mark.parametrize("argv, message", [
    (("models", "nosuch.msl", "--system", "X"), "error: no such file: nosuch.msl"),
    (("models", "appendix.msl", "--system", "X"), "error: no system, logic formula or module named 'X'"),
    (("expand", "appendix.msl", "--system", "M2", "--instance", "nope"), "error: no instance named 'nope'"),
])
def test_errors_exit_2(capsys, argv, message):
    code, out = run(capsys, *argv)
    assert code == 2 and out.strip() == message


def test_syntax_error_position(tmp_path, capsys):
    f = tmp_path / "s.msl"
    f.write_text("module A : explicit { inputs {} outputs {a} models { {} } }\nsystem S = A >>;\n")
    code, out = run(capsys, "check", str(f))
    assert code == 2 and out.startswith("error: 2:16: ")

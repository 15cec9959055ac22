import io
import json

import pytest

from scvertex.cli import ParseError, parse, parse_expr, run_text, unparse
from scvertex.cli.main import build_parser, cmd_repl, dispatch, parse_assignments
from scvertex.cli.parser import BinOp, BracketExpr, CommandStmt, Deriv, LetStmt, Name, Prod, strip_spans
from scvertex.coeff import I, Scalar

HEADER = "algebra F = susy_cff { a: even };\nparam t;\nshift a = t;\n"
SHIFTED = "(t+1)*:d(phi_a) phibar_a: + t*:phi_a d(phibar_a): + :D(phi_a) D(phibar_a):"

GOLDEN_EXPRESSIONS = [
    SHIFTED,
    ":d(phi_a) phibar_a:",
    ":a b c:",
    ":(:a b:) c:",
    "[x, y]",
    "[:D(phi_a) D(phibar_a):, :D(phi_a) D(phibar_a):]",
    "-i*chi1 + chi2",
    "lambda^2*chi - (1/2)*lambda*|0>",
    "D1(D2(Phi_a)) - i*D1(Phi_a)",
    "d(d(x))/3 - (a - b)",
    "@T_sh + 2*@J_sh",
    "-(t+1)*x",
]


def test_bracket_command_parses():
    script = parse(HEADER + "bracket :d(phi_a) phibar_a: phi_a;")
    cmd = script.statements[-1]
    assert isinstance(cmd, CommandStmt) and cmd.name == "bracket"
    assert isinstance(cmd.args[0], Prod) and isinstance(cmd.args[0].items[0], Deriv)
    assert cmd.args[1] == Name("phi_a")


def test_products_nest_to_the_right():
    let = parse("let x = :a b c:;").statements[0]
    assert isinstance(let, LetStmt)
    assert let.value == parse_expr(":a (:b c:):")
    assert let.value != parse_expr(":(:a b:) c:")


def test_bracket_expression():
    e = parse_expr("[x, y] + x")
    assert isinstance(e, BinOp) and isinstance(e.left, BracketExpr)


def test_unterminated_bracket():
    with pytest.raises(ParseError) as info:
        parse("let z = [x, y")
    assert "end of input" in str(info.value)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse("param t;\nlet x = (t +;")
    assert (info.value.line, info.value.col) == (2, 13)


@pytest.mark.parametrize("text", GOLDEN_EXPRESSIONS)
def test_unparse_round_trip(text):
    e = parse_expr(text)
    again = parse_expr(unparse(e))
    assert strip_spans(again) == strip_spans(e)
    assert unparse(again) == unparse(e)


def test_evaluate_examples():
    results = run_text(HEADER + f"let T = {SHIFTED};\nbracket :d(phi_a) phibar_a: phi_a;\n"
                       "verify-sconf T;\ncharge phibar_a;")
    assert [r.text for r in results[:1]] == ["d(phi_a)"]
    data = results[1].to_json()
    assert (data["status"], data["central_charge"]) == ("ok", "6*t + 3")
    assert results[2].text == "-t - 1"
    assert [r.index for r in results] == [0, 1, 2]


def test_empty_script():
    assert run_text("") == []
    assert run_text("# only a comment\n") == []


def test_set_specializes():
    results = run_text(HEADER + "verify-sconf @T_sh;", assignment=parse_assignments(["t=1/2"]))
    assert results[0].to_json()["central_charge"] == "6"


def test_assignments():
    assert parse_assignments(["t_a=1/2", "t_b = -3*i"]) == {"t_a": Scalar.const(1) / 2, "t_b": I * -3}
    with pytest.raises(ValueError):
        parse_assignments(["oops"])


def _write(tmp_path, text, name="s.svx"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_exit_codes(tmp_path, capsys):
    ok = _write(tmp_path, HEADER + "verify-sconf @T_sh;")
    assert dispatch(["run", ok]) == 0
    assert "6*t + 3" in capsys.readouterr().out

    bad_syntax = _write(tmp_path, HEADER + "bracket [phi_a, phibar_a;")
    assert dispatch(["run", bad_syntax]) == 2
    assert "line 4" in capsys.readouterr().err

    wrong_sector = _write(tmp_path, HEADER + "bracket D2(phi_a) phi_a;")
    assert dispatch(["run", wrong_sector]) == 2

    unknown = _write(tmp_path, HEADER + "bracket psi phi_a;")
    assert dispatch(["run", unknown]) == 2

    failing = _write(tmp_path, HEADER + "verify-sconf phi_a;")
    assert dispatch(["run", failing]) == 1
    err = capsys.readouterr().err
    assert json.loads(err.strip().splitlines()[-1])["witness"]


def test_json_format(tmp_path, capsys):
    path = _write(tmp_path, HEADER + "charge phi_a;")
    assert dispatch(["run", "--format", "json", path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out[0]["schema"] == 1 and out[0]["text"] == "t"


def test_latex_format(tmp_path, capsys):
    path = _write(tmp_path, HEADER + "bracket :D(phi_a) D(phibar_a): :D(phi_a) D(phibar_a):;")
    assert dispatch(["run", "--format", "latex", path]) == 0
    assert "2\\lambda D \\phi_{a} D \\phi^{\\bar a}" in capsys.readouterr().out


def test_algebra_file(tmp_path, capsys):
    data = {"kind": "custom", "name": "H", "sector": 0, "generators": [{"name": "x", "parity": "even"}],
            "brackets": [{"left": "x", "right": "x", "value": "lambda"}]}
    alg = _write(tmp_path, json.dumps(data), "h.json")
    path = _write(tmp_path, "bracket x d(x);")
    assert dispatch(["run", "--algebra", alg, path]) == 0
    # [x lambda d(x)] = (d + lambda) lambda |0> and d kills the vacuum
    assert capsys.readouterr().out.strip() == "lambda^2"


def test_repl():
    args = build_parser().parse_args(["repl"])
    stdin = io.StringIO(HEADER + "charge\n phi_a;\nbracket phi_a phibar_a;\n")
    out = io.StringIO()
    assert cmd_repl(args, stdin=stdin, out=out) == 0
    assert out.getvalue().splitlines() == ["t", "1"]


def test_quick_suite(capsys):
    assert dispatch(["check", "--suite", "quick"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 3 and all(line.startswith("PASS") for line in lines)
    assert dispatch(["check", "--suite", "nonexistent"]) == 2


def test_shipped_suite_script(capsys):
    from pathlib import Path

    script = Path(__file__).resolve().parent.parent / "scripts" / "paper_suite.svx"
    assert dispatch(["run", str(script)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 19 and all(line.startswith("PASS") for line in lines)

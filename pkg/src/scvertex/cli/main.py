"""Command-line entry point: ``scvertex run FILE``, ``scvertex check``, ``scvertex repl``.

Exit codes: 0 every check passed, 1 a check or the engine failed (witness as
JSON on stderr), 2 parse or analysis error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ..coeff import I, Scalar
from ..fields import algebra_from_json
from . import parser as ast
from .evaluator import EngineError, Evaluator, Result, ScriptError

EXIT_OK, EXIT_FAIL, EXIT_PARSE = 0, 1, 2


def scalar_value(text: str) -> Scalar:
    """Evaluate a parameter-free scalar expression such as ``1/2`` or ``-3*i``."""

    def ev(e):
        if isinstance(e, ast.Num):
            return Scalar.const(e.value)
        if isinstance(e, ast.Imag):
            return I
        if isinstance(e, ast.Name):
            return Scalar.param(e.id)
        if isinstance(e, ast.Neg):
            return -ev(e.arg)
        if isinstance(e, ast.Pow):
            out = Scalar.const(1)
            for _ in range(e.exp):
                out = out * ev(e.base)
            return out
        if isinstance(e, ast.BinOp):
            a, b = ev(e.left), ev(e.right)
            if e.op == "+":
                return a + b
            if e.op == "-":
                return a - b
            if e.op == "*":
                return a * b
            k = b.as_constant()
            if k is None or k == 0:
                raise ValueError("division needs a nonzero number")
            return a * Scalar.const(k.inverse())
        raise ValueError(f"not a scalar: {text!r}")

    return ev(ast.parse_expr(text))


def parse_assignments(items: list[str]) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise ValueError(f"--set expects NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = scalar_value(v)
    return out


def _make_evaluator(args, base_dir: Path | None = None) -> Evaluator:
    ev = Evaluator(fmt=args.format, assignment=parse_assignments(args.set), base_dir=base_dir,
                   jobs=args.jobs, seed=args.seed)
    if args.algebra:
        alg = algebra_from_json(Path(args.algebra).read_text())
        ev.add_algebra(alg.name, alg)
    return ev


def _emit(results: list[Result], fmt: str, out) -> int:
    code = EXIT_OK
    if fmt == "json":
        print(json.dumps([r.to_json() for r in results], sort_keys=True), file=out)
    for r in results:
        if fmt != "json":
            print(r.text, file=out)
        if r.status != "ok":
            code = EXIT_FAIL
            print(json.dumps({"index": r.index, "command": r.command, "witness": r.witness or {}},
                             sort_keys=True), file=sys.stderr)
    return code


def _run_text(text: str, ev: Evaluator, fmt: str, out) -> int:
    try:
        script = ast.parse(text)
        results = ev.run(script)
    except (ast.ParseError, ScriptError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except EngineError as e:
        print(json.dumps({"error": e.bare, "command_index": e.index, "command": e.command}), file=sys.stderr)
        return EXIT_FAIL
    return _emit(results, fmt, out)


def cmd_run(args) -> int:
    path = Path(args.file)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        ev = _make_evaluator(args, path.parent)
    except (ValueError, ast.ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    return _run_text(text, ev, args.format, sys.stdout)


def cmd_check(args) -> int:
    from ..suite import SUITES, run_suite

    if args.suite not in SUITES:
        print(f"error: unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}", file=sys.stderr)
        return EXIT_PARSE
    outcomes = run_suite(args.suite, jobs=args.jobs, seed=args.seed)
    if args.format == "json":
        print(json.dumps([o.to_json() for o in outcomes], sort_keys=True))
    else:
        for o in outcomes:
            print(o.line())
    failed = [o for o in outcomes if not o.ok]
    for o in failed:
        print(json.dumps({"check": o.name, "witness": o.witness}, sort_keys=True), file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_repl(args, stdin=None, out=None) -> int:
    stdin = stdin or sys.stdin
    out = out or sys.stdout
    try:
        ev = _make_evaluator(args)
    except (ValueError, ast.ParseError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    interactive = stdin.isatty()
    buf = ""
    worst = EXIT_OK
    while True:
        if interactive:
            out.write("... " if buf else "svx> ")
            out.flush()
        line = stdin.readline()
        if not line:
            break
        if line.strip() in ("quit", "exit") and not buf:
            break
        buf += line
        if ";" not in line:
            continue
        worst = max(worst, _run_text(buf, ev, args.format, out))
        buf = ""
    if buf.strip():
        worst = max(worst, _run_text(buf, ev, args.format, out))
    return worst


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "latex", "json"), default="text")
    common.add_argument("--algebra", metavar="FILE", help="preload an algebra from a JSON file")
    common.add_argument("--set", action="append", metavar="NAME=VALUE", help="specialize a parameter")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for suites")

    p = argparse.ArgumentParser(prog="scvertex", description="Exact lambda-bracket calculator.")
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", parents=[common], help="run a .svx script")
    r.add_argument("file")
    c = sub.add_parser("check", parents=[common], help="run a named verification suite")
    c.add_argument("--suite", default="paper")
    sub.add_parser("repl", parents=[common], help="read statements from stdin")
    return p


def dispatch(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "run":
        return cmd_run(args)
    if args.cmd == "check":
        return cmd_check(args)
    return cmd_repl(args)


def main(argv: list[str] | None = None) -> None:
    sys.exit(dispatch(argv))


if __name__ == "__main__":
    main()

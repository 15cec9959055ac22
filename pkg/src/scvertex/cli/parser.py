"""Tokenizer and recursive-descent parser for the .svx script language.

Grammar (statements end with ';', '#' starts a comment):

    algebra NAME = KIND [ '{' basis '}' ] ;       KIND: susy_cff cff bcbg n2_bcbg osp
    algebra NAME = json "file.json" ;
    use NAME ;
    param NAME (, NAME)* ;
    shift BASIS = expr ;                          value of t_BASIS for catalog vectors
    let NAME = expr ;
    COMMAND arg* [solve arg*] ;

Expressions:

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := INT | i | NAME | |0> | '(' expr ')' | '[' expr ',' expr ']'
             | ':' atom atom+ ':'            right-nested normal product
             | d '(' expr ')' | d^K '(' expr ')' | D '(' expr ')' | D1(...) | D2(...)
             | '@' NAME                      catalog vector (T_sh, J_sh, d, ...)
             | lambda | chi | chi1 | chi2    bracket variables

Inside ':' ... ':' a ':' after two or more atoms closes the product; nest
further products with parentheses, e.g. ``:a b (:c e:):``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, fields, is_dataclass


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.bare = message


@dataclass(frozen=True)
class Span:
    line: int
    col: int


def _span():
    return field(default=None, compare=False, repr=False)


# ------------------------------------------------------------ AST

@dataclass(frozen=True)
class Num:
    value: int
    span: Span | None = _span()


@dataclass(frozen=True)
class Imag:
    span: Span | None = _span()


@dataclass(frozen=True)
class Name:
    id: str
    span: Span | None = _span()


@dataclass(frozen=True)
class Vacuum:
    span: Span | None = _span()


@dataclass(frozen=True)
class BVar:
    name: str  # lambda, chi1, chi2
    span: Span | None = _span()


@dataclass(frozen=True)
class Catalog:
    name: str
    span: Span | None = _span()


@dataclass(frozen=True)
class Neg:
    arg: object
    span: Span | None = _span()


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: object
    right: object
    span: Span | None = _span()


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int
    span: Span | None = _span()


@dataclass(frozen=True)
class Prod:
    items: tuple
    span: Span | None = _span()


@dataclass(frozen=True)
class Deriv:
    op: str  # d, D1, D2
    power: int
    arg: object
    span: Span | None = _span()


@dataclass(frozen=True)
class BracketExpr:
    left: object
    right: object
    span: Span | None = _span()


# statements

@dataclass(frozen=True)
class AlgebraDecl:
    name: str
    kind: str
    basis: tuple  # ((name, parity), ...) or None
    source: str | None = None
    span: Span | None = _span()


@dataclass(frozen=True)
class UseStmt:
    name: str
    span: Span | None = _span()


@dataclass(frozen=True)
class ParamDecl:
    names: tuple
    span: Span | None = _span()


@dataclass(frozen=True)
class ShiftStmt:
    basis: str
    value: object
    span: Span | None = _span()


@dataclass(frozen=True)
class LetStmt:
    name: str
    value: object
    span: Span | None = _span()


@dataclass(frozen=True)
class CommandStmt:
    name: str
    args: tuple
    extra: tuple = ()
    span: Span | None = _span()


@dataclass(frozen=True)
class Script:
    statements: tuple


COMMANDS = {
    # name: (min args, max args or None)
    "bracket": (2, 2),
    "normalize": (1, 1),
    "weight": (2, 2),
    "charge": (1, 1),
    "brst": (1, 1),
    "homotopy": (1, 1),
    "components": (1, 1),
    "verify-virasoro": (1, 1),
    "verify-n1": (2, 2),
    "verify-n2": (2, 4),
    "verify-sconf": (1, 1),
    "verify-nk2": (1, 1),
    "constraints": (1, None),
    "suite": (0, 1),
}

KINDS = {"susy_cff", "cff", "bcbg", "n2_bcbg", "osp", "json"}
KEYWORDS = {"algebra", "use", "param", "shift", "let", "solve"}
BRACKET_VARS = {"lambda": "lambda", "chi": "chi1", "chi1": "chi1", "chi2": "chi2", "λ": "lambda", "χ": "chi1"}
DERIVS = {"d", "D", "D1", "D2"}


# ------------------------------------------------------------ lexer

@dataclass(frozen=True)
class Token:
    kind: str  # INT NAME STR OP VAC EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<vac>\|0>)
  | (?P<int>\d+)
  | (?P<str>"[^"\n]*")
  | (?P<cmd>[A-Za-z_][A-Za-z0-9_]*(?:-[A-Za-z0-9_]+)+)
  | (?P<name>[A-Za-z_λχ][A-Za-z0-9_]*)
  | (?P<op>[-+*/^(),;:\[\]{}=@])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            col = 1
        else:
            if kind == "int":
                out.append(Token("INT", s, line, col))
            elif kind == "str":
                out.append(Token("STR", s[1:-1], line, col))
            elif kind in ("name", "cmd"):
                out.append(Token("NAME", s, line, col))
            elif kind == "op":
                out.append(Token("OP", s, line, col))
            elif kind == "vac":
                out.append(Token("VAC", s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("EOF", "", line, col))
    return out


# ------------------------------------------------------------ parser

class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    # helpers
    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def error(self, msg: str, t: Token | None = None):
        t = t or self.tok
        where = "end of input" if t.kind == "EOF" else repr(t.text)
        raise ParseError(f"{msg} (at {where})", t.line, t.col)

    def at_op(self, s: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == s

    def expect_op(self, s: str) -> Token:
        if not self.at_op(s):
            self.error(f"expected {s!r}")
        return self.advance()

    def expect_name(self, what: str = "a name") -> Token:
        if self.tok.kind != "NAME":
            self.error(f"expected {what}")
        return self.advance()

    def span(self, t: Token) -> Span:
        return Span(t.line, t.col)

    # statements
    def script(self) -> Script:
        out = []
        while self.tok.kind != "EOF":
            out.append(self.statement())
        return Script(tuple(out))

    def statement(self):
        t = self.tok
        if t.kind != "NAME":
            self.error("expected a statement")
        word = t.text
        if word == "algebra":
            return self.algebra_decl()
        if word == "use":
            self.advance()
            n = self.expect_name("an algebra name")
            self.expect_op(";")
            return UseStmt(n.text, self.span(t))
        if word == "param":
            self.advance()
            names = [self.expect_name("a parameter name").text]
            while self.at_op(","):
                self.advance()
                names.append(self.expect_name("a parameter name").text)
            self.expect_op(";")
            return ParamDecl(tuple(names), self.span(t))
        if word == "shift":
            self.advance()
            b = self.expect_name("a basis name")
            self.expect_op("=")
            v = self.expr()
            self.expect_op(";")
            return ShiftStmt(b.text, v, self.span(t))
        if word == "let":
            self.advance()
            n = self.expect_name("a binding name")
            self.expect_op("=")
            v = self.expr()
            self.expect_op(";")
            return LetStmt(n.text, v, self.span(t))
        if word in COMMANDS:
            return self.command()
        self.error(f"unknown statement {word!r}")

    def algebra_decl(self):
        t = self.advance()
        name = self.expect_name("an algebra name").text
        self.expect_op("=")
        kt = self.expect_name("an algebra kind")
        kind = kt.text
        if kind not in KINDS:
            self.error(f"unknown algebra kind {kind!r}; known: {', '.join(sorted(KINDS))}", kt)
        if kind == "json":
            if self.tok.kind != "STR":
                self.error("expected a quoted file name")
            src = self.advance().text
            self.expect_op(";")
            return AlgebraDecl(name, kind, None, src, self.span(t))
        basis = None
        if self.at_op("{"):
            self.advance()
            items = []
            while not self.at_op("}"):
                b = self.expect_name("a basis name").text
                self.expect_op(":")
                p = self.expect_name("even or odd")
                if p.text not in ("even", "odd"):
                    self.error("parity must be even or odd", p)
                items.append((b, p.text))
                if self.at_op(","):
                    self.advance()
                elif not self.at_op("}"):
                    self.error("expected ',' or '}'")
            self.advance()
            basis = tuple(items)
        self.expect_op(";")
        return AlgebraDecl(name, kind, basis, None, self.span(t))

    def command(self):
        t = self.advance()
        args, extra = [], []
        target = args
        while not self.at_op(";"):
            if self.tok.kind == "EOF":
                self.error("expected ';'")
            if self.tok.kind == "NAME" and self.tok.text == "solve" and target is args:
                self.advance()
                target = extra
                continue
            if t.text == "suite" and self.tok.kind == "NAME" and not args:
                args.append(Name(self.advance().text))
                continue
            target.append(self.expr())
            if self.at_op(","):
                self.advance()
        self.advance()
        lo, hi = COMMANDS[t.text]
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = str(lo) if lo == hi else (f"{lo}..{hi}" if hi is not None else f"at least {lo}")
            raise ParseError(f"command {t.text} takes {want} arguments, got {len(args)}", t.line, t.col)
        if extra and t.text != "constraints":
            raise ParseError("'solve' is only valid for constraints", t.line, t.col)
        return CommandStmt(t.text, tuple(args), tuple(extra), self.span(t))

    # expressions
    def expr(self):
        left = self.term()
        while self.tok.kind == "OP" and self.tok.text in "+-" and self.tok.text:
            op = self.advance()
            right = self.term()
            left = BinOp(op.text, left, right, self.span(op))
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "OP" and self.tok.text in ("*", "/"):
            op = self.advance()
            right = self.unary()
            left = BinOp(op.text, left, right, self.span(op))
        return left

    def unary(self):
        if self.at_op("-"):
            t = self.advance()
            return Neg(self.unary(), self.span(t))
        if self.at_op("+"):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.at_op("^"):
            t = self.advance()
            if self.tok.kind != "INT":
                self.error("expected an integer exponent")
            return Pow(base, int(self.advance().text), self.span(t))
        return base

    def atom(self):
        t = self.tok
        sp = self.span(t)
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), sp)
        if t.kind == "VAC":
            self.advance()
            return Vacuum(sp)
        if t.kind == "OP":
            if t.text == "(":
                self.advance()
                e = self.expr()
                self.expect_op(")")
                return e
            if t.text == "[":
                self.advance()
                a = self.expr()
                self.expect_op(",")
                b = self.expr()
                self.expect_op("]")
                return BracketExpr(a, b, sp)
            if t.text == ":":
                return self.product()
            if t.text == "@":
                self.advance()
                n = self.expect_name("a catalog vector name")
                return Catalog(n.text, sp)
            self.error("expected an expression")
        if t.kind == "NAME":
            if t.text in DERIVS and (self.peek().kind == "OP" and self.peek().text in ("(", "^")):
                return self.derivative()
            self.advance()
            if t.text == "i":
                return Imag(sp)
            if t.text in BRACKET_VARS:
                return BVar(BRACKET_VARS[t.text], sp)
            if t.text in KEYWORDS:
                self.error(f"keyword {t.text!r} used as a name", t)
            return Name(t.text, sp)
        self.error("expected an expression")

    def derivative(self):
        t = self.advance()
        power = 1
        if self.at_op("^"):
            if t.text != "d":
                self.error("only d takes a power")
            self.advance()
            if self.tok.kind != "INT":
                self.error("expected an integer power")
            power = int(self.advance().text)
        self.expect_op("(")
        arg = self.expr()
        self.expect_op(")")
        op = "D1" if t.text == "D" else t.text
        return Deriv(op, power, arg, self.span(t))

    def product(self):
        t = self.advance()  # ':'
        items = []
        while True:
            if self.at_op(":") and len(items) >= 2:
                self.advance()
                break
            if self.tok.kind == "EOF":
                self.error("unterminated normal product")
            if self.at_op(";"):
                self.error("unterminated normal product")
            items.append(self.power())
        # :a b c: is :a (:b c:):
        sp = self.span(t)
        out = Prod((items[-2], items[-1]), sp)
        for x in reversed(items[:-2]):
            out = Prod((x, out), sp)
        return out


def parse(text: str) -> Script:
    return Parser(text).script()


def parse_expr(text: str):
    p = Parser(text)
    e = p.expr()
    if p.tok.kind != "EOF":
        p.error("unexpected trailing input")
    return e


def parse_lambda_value(text: str, alg):
    """Parse a bracket value such as ``-i*chi1 + chi2`` or ``lambda*x`` in ``alg``."""
    from .evaluator import Evaluator, as_lambda

    ev = Evaluator()
    ev.add_algebra("_", alg)
    return as_lambda(ev.eval_expr(parse_expr(text)), alg)


# ------------------------------------------------------------ unparser

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def unparse(e, prec: int = 0) -> str:
    """Source text for an expression; reparsing gives an equal AST."""
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Imag):
        return "i"
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Vacuum):
        return "|0>"
    if isinstance(e, BVar):
        return e.name
    if isinstance(e, Catalog):
        return f"@{e.name}"
    if isinstance(e, Neg):
        s = "-" + unparse(e.arg, 3)
        return f"({s})" if prec > 1 else s
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = unparse(e.left, p)
        right = unparse(e.right, p + 1)
        s = f"{left} {e.op} {right}" if p == 1 else f"{left}{e.op}{right}"
        return f"({s})" if p < prec else s
    if isinstance(e, Pow):
        return f"{unparse(e.base, 4)}^{e.exp}"
    if isinstance(e, Prod):
        items = list(e.items)
        while isinstance(items[-1], Prod):
            items[-1:] = list(items[-1].items)
        return ":" + " ".join(_prod_item(x) for x in items) + ":"
    if isinstance(e, Deriv):
        op = e.op
        if op == "d" and e.power > 1:
            op = f"d^{e.power}"
        return f"{op}({unparse(e.arg)})"
    if isinstance(e, BracketExpr):
        return f"[{unparse(e.left)}, {unparse(e.right)}]"
    raise TypeError(f"cannot unparse {e!r}")


def _prod_item(x) -> str:
    if isinstance(x, (Name, Deriv, Vacuum, Catalog, Num, Imag, BVar, BracketExpr, Pow)):
        return unparse(x, 4)
    return f"({unparse(x)})"


def strip_spans(node):
    """Structural copy without spans (spans never take part in equality anyway)."""
    if isinstance(node, tuple):
        return tuple(strip_spans(x) for x in node)
    if is_dataclass(node):
        kw = {f.name: strip_spans(getattr(node, f.name)) for f in fields(node) if f.name != "span"}
        return type(node)(**kw)
    return node

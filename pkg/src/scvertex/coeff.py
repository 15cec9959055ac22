"""Exact scalars: Gaussian rationals extended by named polynomial parameters."""
from __future__ import annotations

import sys
from fractions import Fraction
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction, "GaussQ"]


class GaussQ:
    """Element re + im*i of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def of(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        return cls(x, 0)

    def __add__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return GaussQ.of(o) - self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __mul__(self, o):
        o = GaussQ.of(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def inverse(self) -> "GaussQ":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussQ(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * GaussQ.of(o).inverse()

    def __rtruediv__(self, o):
        return GaussQ.of(o) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction, GaussQ)):
            o = GaussQ.of(o)
            return self.re == o.re and self.im == o.im
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        return _fmt_gauss(self)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_gauss(g: GaussQ) -> str:
    if not g.im:
        return _fmt_frac(g.re)
    if not g.re:
        if g.im == 1:
            return "i"
        if g.im == -1:
            return "-i"
        return f"{_fmt_frac(g.im)}*i"
    sign = "+" if g.im > 0 else "-"
    im = abs(g.im)
    tail = "i" if im == 1 else f"{_fmt_frac(im)}*i"
    return f"({_fmt_frac(g.re)} {sign} {tail})"


# A parameter monomial is a sorted tuple of (name, exponent) pairs.
PMono = tuple

_ONE_MONO: PMono = ()


def _mono_mul(a: PMono, b: PMono) -> PMono:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for k, e in b:
        d[k] = d.get(k, 0) + e
    return tuple(sorted(d.items()))


class Scalar:
    """Polynomial in named parameters with coefficients in Q(i). Immutable."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[PMono, GaussQ] | None = None):
        t = {}
        if terms:
            for k, v in terms.items():
                if v:
                    t[k] = v
        self.terms = t
        self._hash = None

    # construction helpers
    @staticmethod
    def const(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        g = GaussQ.of(x)
        return Scalar({_ONE_MONO: g}) if g else ZERO

    @staticmethod
    def param(name: str, power: int = 1) -> "Scalar":
        return Scalar({((sys.intern(name), power),): GaussQ(1)})

    @staticmethod
    def coerce(x) -> "Scalar":
        return x if isinstance(x, Scalar) else Scalar.const(x)

    # ring operations
    def __add__(self, o):
        o = Scalar.coerce(o)
        if not o.terms:
            return self
        if not self.terms:
            return o
        t = dict(self.terms)
        for k, v in o.terms.items():
            if k in t:
                s = t[k] + v
                if s:
                    t[k] = s
                else:
                    del t[k]
            else:
                t[k] = v
        return _raw(t)

    __radd__ = __add__

    def __neg__(self):
        return _raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-Scalar.coerce(o))

    def __rsub__(self, o):
        return Scalar.coerce(o) - self

    def __mul__(self, o):
        if not isinstance(o, Scalar):
            g = GaussQ.of(o)
            if not g:
                return ZERO
            return _raw({k: v * g for k, v in self.terms.items()})
        if not self.terms or not o.terms:
            return ZERO
        t: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = _mono_mul(k1, k2)
                s = t.get(k)
                p = v1 * v2
                t[k] = p if s is None else s + p
        return Scalar(t)

    __rmul__ = __mul__

    def __truediv__(self, o):
        """Division by a nonzero constant."""
        o = Scalar.coerce(o)
        c = o.as_constant()
        if c is None:
            raise ValueError("division by a non-constant scalar")
        return self * c.inverse()

    def __pow__(self, n: int):
        r = ONE
        for _ in range(n):
            r = r * self
        return r

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def as_constant(self) -> GaussQ | None:
        if not self.terms:
            return GaussQ(0)
        if len(self.terms) == 1 and _ONE_MONO in self.terms:
            return self.terms[_ONE_MONO]
        return None

    def params(self) -> set[str]:
        return {name for mono in self.terms for name, _ in mono}

    def eval(self, assignment: Mapping[str, Number | "Scalar"]) -> "Scalar":
        """Substitute parameters; unassigned ones stay symbolic."""
        if not assignment:
            return self
        out = ZERO
        for mono, coef in self.terms.items():
            term = Scalar({(): coef})
            rest = []
            for name, e in mono:
                if name in assignment:
                    term = term * (Scalar.coerce(assignment[name]) ** e)
                else:
                    rest.append((name, e))
            if rest:
                term = term * Scalar({tuple(rest): GaussQ(1)})
            out = out + term
        return out

    def coefficient(self, name: str, power: int) -> "Scalar":
        """Coefficient of name**power, viewing self as a polynomial in name."""
        t = {}
        for mono, c in self.terms.items():
            d = dict(mono)
            if d.get(name, 0) == power:
                d.pop(name, None)
                t[tuple(sorted(d.items()))] = c
        return Scalar(t)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def __eq__(self, o):
        if isinstance(o, Scalar):
            return self.terms == o.terms
        if isinstance(o, (int, Fraction, GaussQ)):
            return self.terms == Scalar.const(o).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), kv[0]))

    # rendering
    def __str__(self):
        return render_text(self)

    def __repr__(self):
        return f"Scalar({render_text(self)!r})"


def _raw(t: dict) -> Scalar:
    s = Scalar.__new__(Scalar)
    s.terms = t
    s._hash = None
    return s


ZERO = Scalar()
ONE = Scalar({(): GaussQ(1)})
I = Scalar({(): GaussQ(0, 1)})


def scalar_add(a, b) -> Scalar:
    return Scalar.coerce(a) + b


def scalar_mul(a, b) -> Scalar:
    return Scalar.coerce(a) * b


def scalar_neg(a) -> Scalar:
    return -Scalar.coerce(a)


def scalar_eval(s, assignment) -> Scalar:
    return Scalar.coerce(s).eval(assignment)


def _mono_text(mono: PMono, sep="*") -> str:
    return sep.join(n if e == 1 else f"{n}^{e}" for n, e in mono)


def render_text(s: Scalar) -> str:
    if not s.terms:
        return "0"
    parts = []
    for mono, c in s.sorted_terms():
        if not mono:
            body = _fmt_gauss(c)
            neg = body.startswith("-")
            parts.append((neg, body[1:] if neg else body))
            continue
        mt = _mono_text(mono)
        if c == 1:
            parts.append((False, mt))
        elif c == -1:
            parts.append((True, mt))
        elif not c.im:
            neg = c.re < 0
            q = abs(c.re)
            cs = _fmt_frac(q)
            cs = f"({cs})" if q.denominator != 1 else cs
            parts.append((neg, f"{cs}*{mt}"))
        elif not c.re:
            neg = c.im < 0
            g = GaussQ(0, abs(c.im))
            parts.append((neg, f"{_fmt_gauss(g)}*{mt}"))
        else:
            parts.append((False, f"{_fmt_gauss(c)}*{mt}"))
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def needs_parens(s: Scalar) -> bool:
    return len(s.terms) > 1 or any(c.re and c.im for c in s.terms.values())


def _latex_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"\\frac{{{q.numerator}}}{{{q.denominator}}}"


def _latex_param(name: str) -> str:
    if "_" in name:
        head, tail = name.split("_", 1)
        return f"{head}_{{{tail}}}"
    return name


def render_latex(s: Scalar) -> str:
    if not s.terms:
        return "0"
    out = []
    for mono, c in s.sorted_terms():
        mt = "".join(_latex_param(n) + (f"^{{{e}}}" if e != 1 else "") for n, e in mono)
        if not c.im:
            neg = c.re < 0
            q = abs(c.re)
            cs = "" if (q == 1 and mt) else _latex_frac(q)
        elif not c.re:
            neg = c.im < 0
            q = abs(c.im)
            cs = ("" if q == 1 else _latex_frac(q)) + "i"
        else:
            neg = False
            cs = f"({_latex_frac(c.re)}{'+' if c.im > 0 else '-'}{_latex_frac(abs(c.im))}i)"
        out.append(("-" if neg else "+", cs + mt))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sg, body in out[1:]:
        text += f" {sg} {body}"
    return text


def to_json(s: Scalar) -> list:
    return [
        {"monomial": {n: e for n, e in mono}, "re": _fmt_frac(c.re), "im": _fmt_frac(c.im)}
        for mono, c in s.sorted_terms()
    ]


def from_json(data: Iterable[dict]) -> Scalar:
    t = {}
    for item in data:
        mono = tuple(sorted((sys.intern(k), int(v)) for k, v in item["monomial"].items()))
        t[mono] = t.get(mono, GaussQ(0)) + GaussQ(Fraction(item["re"]), Fraction(item["im"]))
    return Scalar(t)

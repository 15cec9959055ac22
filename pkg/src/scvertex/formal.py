"""Formal bracket and translation variables.

A word is a tuple ``(lam, gam, dl, mask)``: powers of the even letters
lambda, gamma (auxiliary copy) and the translation operator d, plus a bitmask
of odd letters.  Odd letters are ordered chi1, chi2, eta1, eta2, D1, D2 and
always stored in that order, so the canonical word reads
``lambda^a gamma^b chi.. eta.. d^c D..``: bracket variables sit left of the
translation operators.

Relations (sector n in {0,1,2}, indices i, j <= n):
    chi_i^2 = -lambda, eta_i^2 = -gamma, D_i^2 = d,
    D_i chi_j + chi_j D_i = 2 delta_ij lambda,
    D_i eta_j + eta_j D_i = 2 delta_ij gamma,
every other pair of distinct odd letters anticommutes and even letters are
central.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable

from .coeff import ONE, ZERO, Scalar

LAM, GAM, DEL = "lam", "gam", "del"

CHI = (None, 0, 1)  # bit index of chi_i
ETA = (None, 2, 3)
DOP = (None, 4, 5)
BRACKET_ODD = 0b001111
CHI_BITS = 0b000011
ETA_BITS = 0b001100
D_BITS = 0b110000

Word = tuple  # (lam, gam, dl, mask)
UNIT: Word = (0, 0, 0, 0)


@dataclass(frozen=True)
class Sector:
    n: int

    def __post_init__(self):
        if self.n not in (0, 1, 2):
            raise ValueError(f"unsupported sector {self.n}")

    @property
    def odd_indices(self) -> tuple:
        return tuple(range(1, self.n + 1))

    @property
    def bracket_parity(self) -> int:
        return self.n % 2

    def allowed_mask(self) -> int:
        m = 0
        for i in self.odd_indices:
            m |= (1 << CHI[i]) | (1 << ETA[i]) | (1 << DOP[i])
        return m

    def chi_mask(self) -> int:
        return sum(1 << CHI[i] for i in self.odd_indices)

    def d_mask(self) -> int:
        return sum(1 << DOP[i] for i in self.odd_indices)


def popcount(m: int) -> int:
    return bin(m).count("1")


def word_parity(w: Word) -> int:
    return popcount(w[3]) & 1


def bits(mask: int) -> tuple:
    return tuple(b for b in range(6) if mask >> b & 1)


def _mask_of(seq) -> int:
    m = 0
    for b in seq:
        m |= 1 << b
    return m


def _square(b: int) -> Word:
    if b < 2:
        return (1, 0, 0, 0)  # sign handled by caller: chi^2 = -lambda
    if b < 4:
        return (0, 1, 0, 0)  # eta^2 = -gamma
    return (0, 0, 1, 0)  # D^2 = d


def _square_sign(b: int) -> int:
    return 1 if b >= 4 else -1


def _anticomm(x: int, y: int):
    """{x, y} for distinct odd letters x > y, as (word, coefficient) or None."""
    if x >= 4 and y < 4 and (x - 4) == (y % 2):
        return ((2, 0, 0, 0) if y < 2 else (0, 2, 0, 0))
    return None


@lru_cache(maxsize=None)
def _normalize_seq(seq: tuple) -> tuple:
    """Canonical expansion of a product of odd letters.

    Returns a tuple of ((lam, gam, dl, mask), int coefficient) pairs.
    """
    for k in range(len(seq) - 1):
        x, y = seq[k], seq[k + 1]
        if x < y:
            continue
        out: dict = {}
        rest = seq[:k] + seq[k + 2:]
        if x == y:
            ev = _square(x)
            sg = _square_sign(x)
            for w, c in _normalize_seq(rest):
                key = (w[0] + ev[0], w[1] + ev[1], w[2] + ev[2], w[3])
                out[key] = out.get(key, 0) + sg * c
        else:
            for w, c in _normalize_seq(seq[:k] + (y, x) + seq[k + 2:]):
                out[w] = out.get(w, 0) - c
            ac = _anticomm(x, y)
            if ac is not None:
                # the anticommutator term: 2*lambda or 2*gamma
                for w, c in _normalize_seq(rest):
                    key = (w[0] + (1 if ac[0] else 0), w[1] + (1 if ac[1] else 0), w[2], w[3])
                    out[key] = out.get(key, 0) + 2 * c
        return tuple((w, c) for w, c in out.items() if c)
    return (((0, 0, 0, _mask_of(seq)), 1),)


@lru_cache(maxsize=None)
def word_mul(w1: Word, w2: Word) -> tuple:
    """Product of two canonical words as ((word, int), ...)."""
    seq = bits(w1[3]) + bits(w2[3])
    base = (w1[0] + w2[0], w1[1] + w2[1], w1[2] + w2[2])
    return tuple(
        ((base[0] + w[0], base[1] + w[1], base[2] + w[2], w[3]), c) for w, c in _normalize_seq(seq)
    )


def split_word(w: Word) -> tuple:
    """Split into (bracket part, translation part)."""
    return (w[0], w[1], 0, w[3] & BRACKET_ODD), (0, 0, w[2], w[3] & D_BITS)


def join_word(b: Word, t: Word) -> Word:
    return (b[0] + t[0], b[1] + t[1], b[2] + t[2], b[3] | t[3])


class VarPoly:
    """Finite sum of canonical words with coefficients.

    Coefficients may be Scalars or any type supporting ``+``, unary ``-``,
    multiplication by a Scalar, and ``is_zero()``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if not _is_zero(c):
                    self.terms[w] = c

    @staticmethod
    def word(w: Word, coef=ONE) -> "VarPoly":
        return VarPoly({w: coef})

    @staticmethod
    def scalar(c) -> "VarPoly":
        return VarPoly({UNIT: Scalar.coerce(c)})

    def copy(self):
        return VarPoly(dict(self.terms))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, o: "VarPoly") -> "VarPoly":
        t = dict(self.terms)
        for w, c in o.terms.items():
            if w in t:
                s = t[w] + c
                if _is_zero(s):
                    del t[w]
                else:
                    t[w] = s
            else:
                t[w] = c
        return _vp(t)

    def __neg__(self):
        return _vp({w: -c for w, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s) -> "VarPoly":
        s = Scalar.coerce(s)
        if s.is_zero():
            return VarPoly()
        return VarPoly({w: c * s for w, c in self.terms.items()})

    def __mul__(self, o: "VarPoly") -> "VarPoly":
        """Product of two scalar-coefficient polynomials."""
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in o.terms.items():
                c = c1 * c2
                for w, n in word_mul(w1, w2):
                    _acc(out, w, c * n)
        return VarPoly(out)

    def __eq__(self, o):
        if isinstance(o, VarPoly):
            return self.terms == o.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_lambda_degree(self) -> int:
        return max((w[0] for w in self.terms), default=0)

    def map_coeffs(self, f) -> "VarPoly":
        return VarPoly({w: f(c) for w, c in self.terms.items()})

    def __repr__(self):
        return f"VarPoly({render_word_poly(self)})"

    def __str__(self):
        return render_word_poly(self)


def _vp(t: dict) -> VarPoly:
    p = VarPoly.__new__(VarPoly)
    p.terms = t
    return p


def _is_zero(c) -> bool:
    return c.is_zero()


def _acc(out: dict, w: Word, c) -> None:
    if w in out:
        s = out[w] + c
        if _is_zero(s):
            del out[w]
        else:
            out[w] = s
    elif not _is_zero(c):
        out[w] = c


Translate = Callable[[object, int, int], object]


def act(op: VarPoly, p: VarPoly, translate: Translate) -> VarPoly:
    """Left-multiply ``p`` by the scalar-coefficient operator polynomial ``op``.

    Translation letters produced by normal ordering act on the coefficients of
    ``p`` through ``translate(coef, d_power, d_mask)``.
    """
    out: dict = {}
    for w1, s in op.terms.items():
        for w2, c in p.terms.items():
            for w, n in word_mul(w1, w2):
                b, t = split_word(w)
                cc = c if t == UNIT else translate(c, t[2], t[3])
                if _is_zero(cc):
                    continue
                _acc(out, b, cc * (s * n))
    return VarPoly(out)


def scalar_translate(c, dl, dmask):
    raise ValueError("translation operator acting on a bare scalar")


def mul_words_into(p: VarPoly, w: Word, sign=1) -> VarPoly:
    """Left-multiply every term of ``p`` by the bracket word ``w``."""
    out: dict = {}
    for w2, c in p.terms.items():
        for wp, n in word_mul(w, w2):
            _acc(out, wp, c * (n * sign))
    return VarPoly(out)


# ---------------------------------------------------------------- variables

def lam(power=1) -> VarPoly:
    return VarPoly.word((power, 0, 0, 0))


def gam(power=1) -> VarPoly:
    return VarPoly.word((0, power, 0, 0))


def chi(i=1) -> VarPoly:
    return VarPoly.word((0, 0, 0, 1 << CHI[i]))


def eta(i=1) -> VarPoly:
    return VarPoly.word((0, 0, 0, 1 << ETA[i]))


def dop(i=1) -> VarPoly:
    return VarPoly.word((0, 0, 0, 1 << DOP[i]))


def delop(power=1) -> VarPoly:
    return VarPoly.word((0, 0, power, 0))


def one() -> VarPoly:
    return VarPoly.word(UNIT)


# ---------------------------------------------------------------- calculus

def berezin(p: VarPoly, bit: int) -> VarPoly:
    """Left derivative with respect to the odd letter with the given bit."""
    out: dict = {}
    below = (1 << bit) - 1
    for w, c in p.terms.items():
        if not (w[3] >> bit & 1):
            continue
        sign = -1 if popcount(w[3] & below) & 1 else 1
        _acc(out, (w[0], w[1], w[2], w[3] & ~(1 << bit)), c * sign)
    return VarPoly(out)


def berezin_eta(p: VarPoly, i=1) -> VarPoly:
    return berezin(p, ETA[i])


def berezin_chi(p: VarPoly, i=1) -> VarPoly:
    return berezin(p, CHI[i])


def _power(b: VarPoly, k: int) -> VarPoly:
    r = one()
    for _ in range(k):
        r = r * b
    return r


def integrate(
    p: VarPoly,
    var: str,
    lower: VarPoly | None,
    upper: VarPoly | None,
    translate: Translate = scalar_translate,
) -> VarPoly:
    """Definite integral in the even variable ``var`` ('lam' or 'gam').

    Bounds are even scalar polynomials (None means 0); they may contain the
    translation operator d, which then acts on the coefficients.  Odd letters
    are left untouched.
    """
    idx = 0 if var == LAM else 1
    for b in (lower, upper):
        if b is not None and any(w[3] for w in b.terms):
            raise ValueError("integration bounds must be even")
    out = VarPoly()
    for w, c in p.terms.items():
        k = w[idx]
        rest = list(w)
        rest[idx] = 0
        rest = tuple(rest)
        factor = Scalar.const(Fraction(1, k + 1))
        for bound, sign in ((upper, 1), (lower, -1)):
            if bound is None:
                continue
            op = _power(bound, k + 1) * VarPoly.word(rest, ONE)
            out = out + act(op.scale(factor * sign), VarPoly({UNIT: c}), translate)
    return out


def full_nested_integral(p: VarPoly, sector: Sector) -> VarPoly:
    """Integral over Gamma from 0 to Lambda.

    gamma is integrated from 0 to lambda first, then the Berezin derivatives
    d/d eta^1 d/d eta^2 are applied (the rightmost one first).
    """
    q = integrate(p, GAM, None, lam())
    for i in reversed(sector.odd_indices):
        q = berezin(q, ETA[i])
    return q


def lambda_integral_top(p: VarPoly, sector: Sector, lower, upper, translate: Translate) -> VarPoly:
    """Integral over Lambda: Berezin derivatives in the chi's after the lambda integral."""
    q = integrate(p, LAM, lower, upper, translate)
    for i in reversed(sector.odd_indices):
        q = berezin(q, CHI[i])
    return q


@lru_cache(maxsize=None)
def skew_image(w: Word, n: int) -> VarPoly:
    """Image of a word under lambda -> -d-lambda, chi_i -> -D_i-chi_i."""
    if w[1] or (w[3] & ETA_BITS):
        raise ValueError("skew substitution expects lambda/chi words only")
    r = _power(-(delop() + lam()), w[0])
    for i in (1, 2):
        if w[3] >> CHI[i] & 1:
            r = r * (-(dop(i) + chi(i)))
    tail = (0, 0, w[2], w[3] & D_BITS)
    return r * VarPoly.word(tail)


def substitute_skew(p: VarPoly, sector: Sector, translate: Translate = scalar_translate) -> VarPoly:
    out = VarPoly()
    for w, c in p.terms.items():
        img = skew_image(w, sector.n)
        if isinstance(c, Scalar):
            out = out + img.scale(c)
        else:
            out = out + act(img, VarPoly({UNIT: c}), translate)
    return out


@lru_cache(maxsize=None)
def _shift_image(w: Word) -> VarPoly:
    r = _power(lam() + gam(), w[0])
    for i in (1, 2):
        if w[3] >> CHI[i] & 1:
            r = r * (chi(i) + eta(i))
    return r


def shift_to_sum(p: VarPoly) -> VarPoly:
    """Substitute Lambda -> Lambda + Gamma in a lambda/chi polynomial."""
    out: dict = {}
    for w, c in p.terms.items():
        if w[1] or w[2] or (w[3] & ~CHI_BITS):
            raise ValueError("shift expects bracket-variable words only")
        for w2, s in _shift_image(w).terms.items():
            _acc(out, w2, c * s)
    return VarPoly(out)


def rename_to_aux(p: VarPoly) -> VarPoly:
    """Rename lambda -> gamma and chi_i -> eta_i."""
    out = {}
    for w, c in p.terms.items():
        if w[1] or (w[3] & ~CHI_BITS):
            raise ValueError("rename expects lambda/chi words only")
        out[(0, w[0], w[2], (w[3] & CHI_BITS) << 2)] = c
    return VarPoly(out)


# ---------------------------------------------------------------- rendering

_ODD_TEXT = {0: "chi1", 1: "chi2", 2: "eta1", 3: "eta2", 4: "D1", 5: "D2"}
_ODD_LATEX = {0: "\\chi^{1}", 1: "\\chi^{2}", 2: "\\eta^{1}", 3: "\\eta^{2}", 4: "D^{1}", 5: "D^{2}"}


def odd_name(bit: int, n: int, latex=False) -> str:
    if n == 1:
        base = {0: "chi", 2: "eta", 4: "D"}
        if latex:
            base = {0: "\\chi", 2: "\\eta", 4: "D"}
        return base[bit]
    return (_ODD_LATEX if latex else _ODD_TEXT)[bit]


def word_text(w: Word, n: int = 2) -> str:
    parts = []
    for name, e in (("lambda", w[0]), ("gamma", w[1])):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    for b in bits(w[3] & BRACKET_ODD):
        parts.append(odd_name(b, n))
    if w[2]:
        parts.append("d" if w[2] == 1 else f"d^{w[2]}")
    for b in bits(w[3] & D_BITS):
        parts.append(odd_name(b, n))
    return "*".join(parts)


def word_latex(w: Word, n: int = 2) -> str:
    parts = []
    for name, e in (("\\lambda", w[0]), ("\\gamma", w[1])):
        if e:
            parts.append(name if e == 1 else f"{name}^{{{e}}}")
    for b in bits(w[3] & BRACKET_ODD):
        parts.append(odd_name(b, n, latex=True))
    if w[2]:
        parts.append("\\partial" if w[2] == 1 else f"\\partial^{{{w[2]}}}")
    for b in bits(w[3] & D_BITS):
        parts.append(odd_name(b, n, latex=True))
    return " ".join(parts)


def word_sort_key(w: Word):
    return (w[0] + w[1] + w[2], popcount(w[3]), w)


def render_word_poly(p: VarPoly, n: int = 2) -> str:
    from .coeff import needs_parens, render_text

    if not p.terms:
        return "0"
    out = []
    for w in sorted(p.terms, key=word_sort_key):
        c = p.terms[w]
        cs = render_text(c) if isinstance(c, Scalar) else str(c)
        ws = word_text(w, n)
        if not ws:
            out.append(cs)
        elif cs == "1":
            out.append(ws)
        elif cs == "-1":
            out.append("-" + ws)
        else:
            paren = needs_parens(c) if isinstance(c, Scalar) else True
            out.append(f"({cs})*{ws}" if paren else f"{cs}*{ws}")
    return " + ".join(out).replace("+ -", "- ")


def from_pairs(pairs: Iterable) -> VarPoly:
    out: dict = {}
    for w, c in pairs:
        _acc(out, w, Scalar.coerce(c))
    return VarPoly(out)

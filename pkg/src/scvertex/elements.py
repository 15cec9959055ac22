"""Vertex algebra elements and the normal-product normalizer.

A derived generator is a triple ``(gen, dl, dmask)`` meaning
``d^dl D.. gen`` with ``dmask`` using the D bits of :mod:`formal`.  A monomial
is a tuple of derived generators sorted non-decreasingly; it stands for the
right-nested product ``:g1 :g2 ... gn::``.  The empty tuple is the vacuum.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import formal
from .coeff import ONE, ZERO, Scalar
from .formal import D_BITS, DOP, Sector, VarPoly, popcount, word_mul

VACUUM: tuple = ()


class AlgebraError(Exception):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    index: int


class Algebra:
    """Generators, structure constants and caches of one (SUSY) vertex algebra.

    Brackets of generators must be linear in derived generators plus a
    multiple of the vacuum, so that normal ordering terminates.
    """

    def __init__(self, name: str, sector: int, generators: Iterable[tuple[str, int]]):
        self.name = name
        self.sector = Sector(sector)
        self.generators: list[Generator] = []
        self.by_name: dict[str, Generator] = {}
        for nm, par in generators:
            self.add_generator(nm, par)
        self.table: dict[tuple[int, int], VarPoly] = {}
        # quotient rule: D2 g = coef * D1 g
        self.d2_rules: dict[int, Scalar] = {}
        self.meta: dict = {}
        self._lock = threading.Lock()
        self.clear_caches()

    def add_generator(self, name: str, parity: int) -> Generator:
        if name in self.by_name:
            raise AlgebraError(f"duplicate generator {name}")
        g = Generator(name, parity & 1, len(self.generators))
        self.generators.append(g)
        self.by_name[name] = g
        return g

    def clear_caches(self):
        self.insert_cache: dict = {}
        self.prod_cache: dict = {}
        self.bracket_cache: dict = {}
        self.top_cache: dict = {}

    # element constructors
    def gen(self, name: str) -> "Element":
        if name not in self.by_name:
            raise AlgebraError(f"unknown generator {name!r} in algebra {self.name}")
        return Element(self, {((self.by_name[name].index, 0, 0),): ONE})

    def vacuum(self) -> "Element":
        return Element(self, {VACUUM: ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, s) -> "Element":
        return Element(self, {VACUUM: Scalar.coerce(s)})

    # structure constants
    def set_bracket(self, a: str, b: str, value: VarPoly) -> None:
        self.table[(self.by_name[a].index, self.by_name[b].index)] = value
        self.clear_caches()

    def set_d2_rule(self, name: str, coef) -> None:
        if self.sector.n != 2:
            raise AlgebraError("D2 quotient rules need an N_K=2 algebra")
        self.d2_rules[self.by_name[name].index] = Scalar.coerce(coef)
        self.clear_caches()

    def dgen_parity(self, dg) -> int:
        return (self.generators[dg[0]].parity + popcount(dg[2])) & 1

    def mono_parity(self, m) -> int:
        p = 0
        for dg in m:
            p ^= self.dgen_parity(dg)
        return p

    def __repr__(self):
        return f"Algebra({self.name!r}, sector={self.sector.n})"


class Element:
    """Finite linear combination of canonical monomials."""

    __slots__ = ("alg", "terms", "_hash")

    def __init__(self, alg: Algebra, terms: Mapping | None = None):
        self.alg = alg
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    # arithmetic
    def _check(self, o: "Element"):
        if o.alg is not self.alg:
            raise AlgebraError("elements of different algebras")

    def __add__(self, o: "Element") -> "Element":
        self._check(o)
        t = dict(self.terms)
        for m, c in o.terms.items():
            if m in t:
                s = t[m] + c
                if s.is_zero():
                    del t[m]
                else:
                    t[m] = s
            else:
                t[m] = c
        return _el(self.alg, t)

    def __neg__(self):
        return _el(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, s) -> "Element":
        if isinstance(s, Element):
            raise TypeError("use normal_product for products of elements")
        s = Scalar.coerce(s)
        if s.is_zero():
            return _el(self.alg, {})
        return Element(self.alg, {m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, o):
        if isinstance(o, Element):
            return self.alg is o.alg and self.terms == o.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @property
    def parity(self):
        ps = {self.alg.mono_parity(m) for m in self.terms}
        if not ps:
            return 0
        return ps.pop() if len(ps) == 1 else None

    def eval(self, assignment) -> "Element":
        return Element(self.alg, {m: c.eval(assignment) for m, c in self.terms.items()})

    def params(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.params()
        return out

    def coefficient(self, mono) -> Scalar:
        return self.terms.get(mono, ZERO)

    # derivations
    def d(self, power: int = 1) -> "Element":
        return translate(self, power, 0)

    def D(self, i: int = 1) -> "Element":
        return translate(self, 0, 1 << DOP[i])

    def __repr__(self):
        from .render import element_text

        return f"Element({element_text(self)})"

    def __str__(self):
        from .render import element_text

        return element_text(self)


def _el(alg, t) -> Element:
    e = Element.__new__(Element)
    e.alg = alg
    e.terms = t
    e._hash = None
    return e


def _acc(t: dict, m, c: Scalar):
    if m in t:
        s = t[m] + c
        if s.is_zero():
            del t[m]
        else:
            t[m] = s
    elif not c.is_zero():
        t[m] = c


# ------------------------------------------------------------ derived generators

def canonical_dgen(alg: Algebra, g: int, dl: int, dmask: int) -> list:
    """Apply quotient rules; returns [(coef, (g, dl, dmask))]."""
    if not (dmask >> DOP[2] & 1) or g not in alg.d2_rules:
        return [(ONE, (g, dl, dmask))]
    coef = alg.d2_rules[g]
    # d^dl (D1?) D2 g  ->  coef * d^dl (D1?) D1 g
    head = (0, 0, dl, dmask & ~(1 << DOP[2]))
    out = []
    for w, n in word_mul(head, (0, 0, 0, 1 << DOP[1])):
        for c2, dg in canonical_dgen(alg, g, w[2], w[3]):
            out.append((coef * n * c2, dg))
    return out


def dgen_translate(alg: Algebra, dg, dl: int, dmask: int) -> list:
    """Apply the translation word d^dl D-mask to a derived generator."""
    out = []
    for w, n in word_mul((0, 0, dl, dmask), (0, 0, dg[1], dg[2])):
        for c, d2 in canonical_dgen(alg, dg[0], w[2], w[3]):
            out.append((c * n, d2))
    return out


# ------------------------------------------------------------ translations

def _apply_odd_to_mono(alg: Algebra, m: tuple, bit: int) -> Element:
    """Signed Leibniz rule for one odd derivation on a right-nested monomial."""
    out = alg.zero()
    sign = 1
    for k, dg in enumerate(m):
        for c, nd in dgen_translate(alg, dg, 0, 1 << bit):
            raw = m[:k] + (nd,) + m[k + 1:]
            out = out + normalize_raw(alg, raw) * (c * sign)
        if alg.dgen_parity(dg):
            sign = -sign
    return out


def _apply_del_to_mono(alg: Algebra, m: tuple) -> Element:
    out = alg.zero()
    for k, dg in enumerate(m):
        raw = m[:k] + ((dg[0], dg[1] + 1, dg[2]),) + m[k + 1:]
        out = out + normalize_raw(alg, raw)
    return out


def translate(v: Element, dl: int, dmask: int) -> Element:
    """Apply d^dl D.. (rightmost D first) to an element."""
    alg = v.alg
    cur = v
    for bit in reversed(formal.bits(dmask)):
        if alg.sector.n == 0 or bit < 4 or (bit - 4) >= alg.sector.n:
            raise AlgebraError("odd derivation not available in this sector")
        nxt = alg.zero()
        for m, c in cur.terms.items():
            key = ("odd", m, bit)
            r = alg.insert_cache.get(key)
            if r is None:
                r = _apply_odd_to_mono(alg, m, bit)
                alg.insert_cache[key] = r
            nxt = nxt + r * c
        cur = nxt
    for _ in range(dl):
        nxt = alg.zero()
        for m, c in cur.terms.items():
            key = ("del", m)
            r = alg.insert_cache.get(key)
            if r is None:
                r = _apply_del_to_mono(alg, m)
                alg.insert_cache[key] = r
            nxt = nxt + r * c
        cur = nxt
    return cur


def apply_translation(v: Element, op: str) -> Element:
    """op is 'd', 'D', 'D1' or 'D2'."""
    if op == "d":
        return translate(v, 1, 0)
    idx = 1 if op in ("D", "D1") else 2
    if v.alg.sector.n == 1 and op not in ("D", "D1"):
        raise AlgebraError("sector 1 has a single odd derivation D")
    return translate(v, 0, 1 << DOP[idx])


def translate_coeff(c, dl, dmask):
    """Hook for :func:`formal.act`: translations act on Element coefficients."""
    return translate(c, dl, dmask)


# ------------------------------------------------------------ normal ordering

def _top(alg: Algebra, a: Element, b: Element) -> VarPoly:
    from .bracket import top_bracket

    return top_bracket(a, b)


def _qc(alg: Algebra, a: Element, b: Element) -> Element:
    """Commutator correction: integral of the top bracket from -d to 0."""
    top = _top(alg, a, b)
    out = alg.zero()
    for w, y in top.terms.items():
        j = w[0]
        # int_{-d}^0 lambda^j dlambda = -(-d)^(j+1)/(j+1)
        coef = Scalar.const(Fraction(-((-1) ** (j + 1)), j + 1))
        out = out + translate(y, j + 1, 0) * coef
    return out


def _qa_half(alg: Algebra, a: Element, b: Element, c: Element) -> Element:
    """Sum over j of :(d^(j+1) a / (j+1)!) (b_(j) c): read off the top bracket."""
    top = _top(alg, b, c)
    out = alg.zero()
    for w, y in top.terms.items():
        j = w[0]
        da = translate(a, j + 1, 0) * Scalar.const(Fraction(1, j + 1))
        out = out + normal_product(da, y)
    return out


def _qa(alg: Algebra, a: Element, b: Element, c: Element) -> Element:
    """(ab)c - a(bc)."""
    pa, pb = a.parity, b.parity
    s = -1 if (pa and pb) else 1
    return _qa_half(alg, a, b, c) + _qa_half(alg, b, a, c) * s


def _single(alg, dg) -> Element:
    return _el(alg, {(dg,): ONE})


def _mono_el(alg, m) -> Element:
    return _el(alg, {m: ONE})


def insert(alg: Algebra, dg: tuple, m: tuple) -> Element:
    """Canonical form of :dg m: for a derived generator and canonical monomial."""
    key = (dg, m)
    r = alg.insert_cache.get(key)
    if r is not None:
        return r
    r = _insert(alg, dg, m)
    alg.insert_cache[key] = r
    return r


def _insert(alg: Algebra, dg: tuple, m: tuple) -> Element:
    if not m or dg < m[0] or (dg == m[0] and not alg.dgen_parity(dg)):
        return _mono_el(alg, (dg,) + m)
    h = m[0]
    rest = m[1:]
    A = _single(alg, dg)
    B = _single(alg, h)
    C = _mono_el(alg, rest)
    pa, pb = alg.dgen_parity(dg), alg.dgen_parity(h)
    if dg == h:
        # odd square: :A(AC): = 1/2 :QC(A,A) C:
        return normal_product(_qc(alg, A, A), C) * Scalar.const(Fraction(1, 2))
    s = -1 if (pa and pb) else 1
    ac = insert_elem(alg, dg, rest)
    main = alg.zero()
    for mm, cc in ac.terms.items():
        main = main + insert(alg, h, mm) * cc
    out = (main + _qa(alg, B, A, C)) * s
    out = out + normal_product(_qc(alg, A, B), C) - _qa(alg, A, B, C)
    return out


def insert_elem(alg: Algebra, dg: tuple, m: tuple) -> Element:
    return insert(alg, dg, m)


def normalize_raw(alg: Algebra, raw: tuple) -> Element:
    """Canonical form of the right-nested product of derived generators."""
    if not raw:
        return alg.vacuum()
    cur = _mono_el(alg, (raw[-1],))
    for dg in reversed(raw[:-1]):
        nxt = alg.zero()
        for m, c in cur.terms.items():
            nxt = nxt + insert(alg, dg, m) * c
        cur = nxt
    return cur


def _prod_mono(alg: Algebra, m1: tuple, m2: tuple) -> Element:
    key = (m1, m2)
    r = alg.prod_cache.get(key)
    if r is not None:
        return r
    if not m1:
        r = _mono_el(alg, m2)
    elif not m2:
        r = _mono_el(alg, m1)
    elif len(m1) == 1:
        r = insert(alg, m1[0], m2)
    else:
        # :(g R) m2: = :g (R m2): + QA(g, R, m2)
        g = m1[0]
        R = _mono_el(alg, m1[1:])
        inner = _prod_mono(alg, m1[1:], m2)
        r = alg.zero()
        for mm, cc in inner.terms.items():
            r = r + insert(alg, g, mm) * cc
        r = r + _qa(alg, _single(alg, g), R, _mono_el(alg, m2))
    alg.prod_cache[key] = r
    return r


def normal_product(a: Element, b: Element) -> Element:
    """Canonical form of :ab:."""
    if a.alg is not b.alg:
        raise AlgebraError("normal product of elements of different algebras")
    alg = a.alg
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            for m, cm in _prod_mono(alg, m1, m2).terms.items():
                _acc(out, m, cm * c)
    return _el(alg, out)


def nprod(*xs: Element) -> Element:
    """Right-nested normal product :x1 :x2 ... xn::."""
    if not xs:
        raise ValueError("empty product")
    cur = xs[-1]
    for x in reversed(xs[:-1]):
        cur = normal_product(x, cur)
    return cur


# ------------------------------------------------------------ expression trees

@dataclass
class Node:
    """Raw expression tree consumed by :func:`normalize`."""

    kind: str  # 'gen', 'scalar', 'sum', 'prod', 'scale', 'trans', 'elem'
    args: tuple = ()
    value: object = None


def normalize(tree: Node, alg: Algebra) -> Element:
    k = tree.kind
    if k == "gen":
        return alg.gen(tree.value)
    if k == "elem":
        return tree.value
    if k == "scalar":
        return alg.scalar(tree.value)
    if k == "sum":
        out = alg.zero()
        for a in tree.args:
            out = out + normalize(a, alg)
        return out
    if k == "prod":
        return nprod(*[normalize(a, alg) for a in tree.args])
    if k == "scale":
        return normalize(tree.args[0], alg) * tree.value
    if k == "trans":
        return apply_translation(normalize(tree.args[0], alg), tree.value)
    raise AlgebraError(f"unknown node kind {k}")

"""Lambda-bracket evaluation in sectors 0, 1 and 2.

A bracket value (a "lambda element") is a :class:`formal.VarPoly` whose words
contain only bracket letters (lambda, chi's) and whose coefficients are
:class:`Element` instances.

Sign conventions per sector n:

=================================  ===================  ===================  ===================
rule                               n = 0                n = 1                n = 2
=================================  ===================  ===================  ===================
left  [D_i a, b]                   --                   +chi [a, b]          -chi_i [a, b]
right [a, D_i b]                   --                   (-1)^(a+1)(D+chi)    (-1)^a (D_i+chi_i)
skew  [b, a]                       (-1)^(ab+1) S[a, b]  (-1)^(ab) S[a, b]    (-1)^(ab+1) S[a, b]
Wick  middle term sign             (-1)^(ab)            (-1)^((a+1)b)        (-1)^(ab)
odd scalar out of the left slot    --                   -1                   +1
=================================  ===================  ===================  ===================

S is the substitution lambda -> -d-lambda, chi_i -> -D_i-chi_i.
"""
from __future__ import annotations

from math import factorial

from . import formal
from .coeff import ONE, Scalar
from .elements import (
    Algebra,
    AlgebraError,
    Element,
    _el,
    normal_product,
    translate_coeff,
)
from .formal import CHI, DOP, UNIT, VarPoly, act, chi, delop, dop, lam, word_parity


def _mono_el(alg, m):
    return _el(alg, {m: ONE})


def left_pull_sign(n: int, odd: int) -> int:
    """Sign for moving an odd bracket-variable factor out of the left slot."""
    return -1 if (n == 1 and odd) else 1


def right_pull_sign(n: int, pa: int, odd: int) -> int:
    """Sign for moving an odd scalar factor out of the right slot past ``a``."""
    if not odd:
        return 1
    return -1 if ((pa + n) & 1) else 1


def skew_sign(n: int, pa: int, pb: int) -> int:
    e = pa * pb + (0 if n == 1 else 1)
    return -1 if e & 1 else 1


def wick_sign(n: int, pa: int, pb: int) -> int:
    e = ((pa + 1) * pb) if n == 1 else pa * pb
    return -1 if e & 1 else 1


def _sesqui_ops(alg: Algebra, g, h) -> VarPoly:
    """Operator polynomial L * R with [g, h] = L R [G, H] for derived generators."""
    n = alg.sector.n
    pG = alg.generators[g[0]].parity
    op = formal.one()
    if g[1]:
        op = op * formal._power(-lam(), g[1])
    s = 1 if n == 1 else -1
    for bit in formal.bits(g[2]):
        i = bit - 3
        op = op * chi(i).scale(s)
    r = formal._power(delop() + lam(), h[1])
    sigma = (-1 if (pG + 1) & 1 else 1) if n == 1 else (-1 if pG else 1)
    for bit in formal.bits(h[2]):
        i = bit - 3
        r = r * (dop(i) + chi(i)).scale(sigma)
    return op * r


def _bracket_dgens(alg: Algebra, g, h) -> VarPoly:
    base = alg.table.get((g[0], h[0]))
    if base is None or base.is_zero():
        return VarPoly()
    if not (g[1] or g[2] or h[1] or h[2]):
        return base
    return act(_sesqui_ops(alg, g, h), base, translate_coeff)


def bracket_mono(alg: Algebra, m1: tuple, m2: tuple) -> VarPoly:
    key = (m1, m2)
    r = alg.bracket_cache.get(key)
    if r is not None:
        return r
    r = _bracket_mono(alg, m1, m2)
    alg.bracket_cache[key] = r
    return r


def _bracket_mono(alg: Algebra, m1: tuple, m2: tuple) -> VarPoly:
    n = alg.sector.n
    if not m1 or not m2:
        return VarPoly()
    if len(m2) >= 2:
        return _wick(alg, m1, m2)
    if len(m1) >= 2:
        pa = alg.mono_parity(m2)
        pb = alg.mono_parity(m1)
        rev = bracket_mono(alg, m2, m1)
        return formal.substitute_skew(rev, alg.sector, translate_coeff).scale(
            Scalar.const(skew_sign(n, pa, pb))
        )
    return _bracket_dgens(alg, m1[0], m2[0])


def _wick(alg: Algebra, m1: tuple, m2: tuple) -> VarPoly:
    n = alg.sector.n
    h = m2[:1]
    rest = m2[1:]
    c = _mono_el(alg, rest)
    pa = alg.mono_parity(m1)
    pb = alg.mono_parity(h)
    ab = bracket_mono(alg, m1, h)
    out: dict = {}
    # [a b] c
    for w, x in ab.terms.items():
        formal._acc(out, w, normal_product(x, c))
    # sign * b [a c]
    ws = wick_sign(n, pa, pb)
    b_el = _mono_el(alg, h)
    for w, z in bracket_mono(alg, m1, rest).terms.items():
        sg = ws * (-1 if (pb and word_parity(w)) else 1)
        formal._acc(out, w, normal_product(b_el, z) * sg)
    # integral term
    integrand = VarPoly()
    for w, x in ab.terms.items():
        inner = formal.rename_to_aux(bracket(x, c))
        if inner.is_zero():
            continue
        integrand = integrand + formal.mul_words_into(inner, w, left_pull_sign(n, word_parity(w)))
    if not integrand.is_zero():
        for w, y in formal.full_nested_integral(integrand, alg.sector).terms.items():
            formal._acc(out, w, y)
    return VarPoly(out)


def bracket(a: Element, b: Element) -> VarPoly:
    """The Lambda-bracket [a Lambda b]."""
    if a.alg is not b.alg:
        raise AlgebraError("bracket of elements of different algebras")
    alg = a.alg
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            c = c1 * c2
            for w, y in bracket_mono(alg, m1, m2).terms.items():
                formal._acc(out, w, y * c)
    return VarPoly(out)


def top_bracket(a: Element, b: Element) -> VarPoly:
    """The ordinary lambda-bracket hidden in the top odd component.

    Sector 1 reads the chi coefficient, sector 2 the coefficient picked by
    d/dchi1 d/dchi2.  These are the modes entering normal ordering.
    """
    alg = a.alg
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            key = (m1, m2)
            t = alg.top_cache.get(key)
            if t is None:
                t = bracket_mono(alg, m1, m2)
                for i in reversed(alg.sector.odd_indices):
                    t = formal.berezin(t, CHI[i])
                alg.top_cache[key] = t
            c = c1 * c2
            for w, y in t.terms.items():
                formal._acc(out, w, y * c)
    return VarPoly(out)


def parse_mask(alg: Algebra, mask) -> int:
    """Accept '0'/'1' (sector 1), '00'/'10'/'01'/'11' (sector 2) or a chi bitmask."""
    n = alg.sector.n
    if isinstance(mask, int):
        return mask
    if isinstance(mask, (set, frozenset, tuple, list)):
        m = 0
        for i in mask:
            m |= 1 << CHI[int(str(i).replace("chi", "") or 1)]
        return m
    s = str(mask)
    if n == 0:
        if s not in ("", "0"):
            raise AlgebraError("sector 0 modes have no odd index")
        return 0
    if len(s) != n or any(ch not in "01" for ch in s):
        raise AlgebraError(f"bad mode mask {mask!r} for sector {n}")
    m = 0
    for i, ch in enumerate(s, start=1):
        if ch == "1":
            m |= 1 << CHI[i]
    return m


def mode_action(a: Element, j: int, mask, v: Element) -> Element:
    """The mode a_(j|mask) applied to v."""
    alg = a.alg
    m = parse_mask(alg, mask)
    br = bracket(a, v)
    y = br.terms.get((j, 0, 0, m))
    if y is None:
        return alg.zero()
    coef = factorial(j)
    if alg.sector.n == 2 and m:
        coef = -coef
    return y * coef


def lambda_element(alg: Algebra, pairs) -> VarPoly:
    """Build a lambda element from (operator VarPoly, Element) pairs."""
    out = VarPoly()
    for op, el in pairs:
        out = out + act(op, VarPoly({UNIT: el}), translate_coeff)
    return out


def apply_operator(op: VarPoly, v: Element) -> VarPoly:
    """Apply a polynomial in bracket variables and translations to v."""
    return act(op, VarPoly({UNIT: v}), translate_coeff)


def clear_memo(alg: Algebra) -> None:
    alg.clear_caches()

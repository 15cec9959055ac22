"""Component reductions.

N_K=1 -> ordinary: a superfield v(z, theta) = body(z) + theta * theta_part(z),
with generators mapped through an explicit dictionary.

N_K=2 -> N_K=1: split along theta^2, Phi = phi + i theta^2 D phi.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import formal
from .bracket import bracket, mode_action
from .coeff import I, ONE, Scalar
from .elements import Algebra, AlgebraError, Element, normal_product, translate
from .fields import build_vector, make_bc_beta_gamma, make_susy_charged_free_fermion
from .formal import CHI, DOP, UNIT, VarPoly, chi, lam


@dataclass
class ComponentMap:
    """Generator dictionary from an N_K=1 algebra into an ordinary one."""

    source: Algebra
    target: Algebra
    body: dict  # source generator name -> target Element
    theta: dict
    cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        names = {g.name for g in self.source.generators}
        if set(self.body) != names or set(self.theta) != names:
            raise AlgebraError("component dictionary must cover every generator exactly once")


def component_map_nk1(src: Algebra, target: Algebra | None = None) -> ComponentMap:
    """The standard dictionary for the SUSY charged free fermions.

    Even a: phi_a -> (gamma_a, c_a), phibar_a -> (b_a, beta_a).
    Odd a: the two roles swap.
    """
    if src.meta.get("kind") != "susy_cff":
        raise AlgebraError("standard component map needs a SUSY charged free fermion algebra")
    basis = src.meta["basis"]
    tgt = target or make_bc_beta_gamma(basis, name=f"{src.name}_components")
    body, theta = {}, {}
    for a, p in basis:
        bos = (tgt.gen(f"gamma_{a}"), tgt.gen(f"c_{a}"))
        fer = (tgt.gen(f"b_{a}"), tgt.gen(f"beta_{a}"))
        phi, phibar = (bos, fer) if p == 0 else (fer, bos)
        body[f"phi_{a}"], theta[f"phi_{a}"] = phi
        body[f"phibar_{a}"], theta[f"phibar_{a}"] = phibar
    return ComponentMap(src, tgt, body, theta)


def _dgen_components(cmap: ComponentMap, dg) -> tuple:
    src = cmap.source
    name = src.generators[dg[0]].name
    A, B = cmap.body[name], cmap.theta[name]
    if dg[2]:
        # (d_theta + theta d_z)(A + theta B) = B + theta dA
        A, B = B, A.d()
    if dg[1]:
        A, B = A.d(dg[1]), B.d(dg[1])
    return A, B


def component_product(A: Element, B: Element, C: Element, Dp: Element) -> tuple:
    """(A + theta B)(C + theta Dp) = AC + theta (BC + (-1)^A A Dp)."""
    pa = A.parity or 0
    sign = -1 if pa else 1
    return normal_product(A, C), normal_product(B, C) + normal_product(A, Dp) * sign


def _mono_components(cmap: ComponentMap, m: tuple) -> tuple:
    r = cmap.cache.get(m)
    if r is not None:
        return r
    tgt = cmap.target
    if not m:
        r = (tgt.vacuum(), tgt.zero())
    elif len(m) == 1:
        r = _dgen_components(cmap, m[0])
    else:
        A, B = _dgen_components(cmap, m[0])
        C, Dp = _mono_components(cmap, m[1:])
        r = component_product(A, B, C, Dp)
    cmap.cache[m] = r
    return r


def components_nk1(v: Element, cmap: ComponentMap) -> tuple[Element, Element]:
    """(body, theta part) of an N_K=1 element."""
    if v.alg is not cmap.source:
        raise AlgebraError("element does not belong to the map's source algebra")
    body, th = cmap.target.zero(), cmap.target.zero()
    for m, c in v.terms.items():
        A, B = _mono_components(cmap, m)
        body = body + A * c
        th = th + B * c
    return body, th


def map_lambda(p: VarPoly, f) -> VarPoly:
    return VarPoly({w: f(y) for w, y in p.terms.items()})


def nonsusy_bracket_via_components(a: Element, b: Element, cmap: ComponentMap) -> VarPoly:
    """Ordinary lambda-bracket of the bodies read off the chi part of [a Lambda b]."""
    top = formal.berezin(bracket(a, b), CHI[1])
    return map_lambda(top, lambda y: components_nk1(y, cmap)[0])


def susy_bracket_from_components(a: Element, b: Element, cmap: ComponentMap) -> VarPoly:
    """[a Lambda b] rebuilt from ordinary brackets: [Da_body, b_body] + chi [a_body, b_body]."""
    A, Aθ = components_nk1(a, cmap)
    Bb, _ = components_nk1(b, cmap)
    out = bracket(Aθ, Bb)
    for w, y in bracket(A, Bb).terms.items():
        out = out + formal.mul_words_into(VarPoly({w: y}), (0, 0, 0, 1 << CHI[1]))
    return out


# ------------------------------------------------------------ N_K=2 -> N_K=1

@dataclass
class N2ComponentMap:
    source: Algebra  # N=2 SUSY bc-beta-gamma
    target: Algebra  # SUSY charged free fermions, same basis
    cache: dict = field(default_factory=dict, repr=False)
    nk1: ComponentMap | None = None


def component_map_nk2(src: Algebra) -> N2ComponentMap:
    if src.meta.get("kind") != "n2_bcbg":
        raise AlgebraError("N_K=2 reduction needs the N=2 SUSY bc-beta-gamma algebra")
    tgt = make_susy_charged_free_fermion(src.meta["basis"], name=f"{src.name}_nk1")
    return N2ComponentMap(src, tgt, nk1=component_map_nk1(tgt))


def _n2_dgen(cmap: N2ComponentMap, dg) -> tuple:
    src, tgt = cmap.source, cmap.target
    name = src.generators[dg[0]].name
    low = name.replace("Phibar_", "phibar_").replace("Phi_", "phi_")
    A = tgt.gen(low)
    B = A.D() * I
    for bit in reversed(formal.bits(dg[2])):
        if bit == DOP[2]:
            A, B = B, A.d()
        else:
            # D1 passes theta^2
            A, B = A.D(), -B.D()
    if dg[1]:
        A, B = A.d(dg[1]), B.d(dg[1])
    return A, B


def _n2_mono(cmap: N2ComponentMap, m: tuple) -> tuple:
    r = cmap.cache.get(m)
    if r is not None:
        return r
    tgt = cmap.target
    if not m:
        r = (tgt.vacuum(), tgt.zero())
    elif len(m) == 1:
        r = _n2_dgen(cmap, m[0])
    else:
        A, B = _n2_dgen(cmap, m[0])
        C, Dp = _n2_mono(cmap, m[1:])
        r = component_product(A, B, C, Dp)
    cmap.cache[m] = r
    return r


def components_nk2(v: Element, cmap: N2ComponentMap) -> tuple[Element, Element]:
    """(theta^2 body, theta^2 coefficient) as N_K=1 elements."""
    if v.alg is not cmap.source:
        raise AlgebraError("element does not belong to the map's source algebra")
    body, th = cmap.target.zero(), cmap.target.zero()
    for m, c in v.terms.items():
        A, B = _n2_mono(cmap, m)
        body = body + A * c
        th = th + B * c
    return body, th


def realize_nk2(v: Element, cmap: N2ComponentMap) -> Element:
    """Image of an N_K=2 element in the ordinary bc-beta-gamma system."""
    return components_nk1(components_nk2(v, cmap)[0], cmap.nk1)[0]


def nk2_bracket_via_nk1(u: Element, v: Element, cmap: N2ComponentMap) -> VarPoly:
    """[u Lambda v] from ordinary brackets of derivative images.

    -[D1 D2 u, v] - chi1 [D2 u, v] + chi2 [D1 u, v] - chi1 chi2 [u, v]
    """
    r = lambda x: realize_nk2(x, cmap)
    rv = r(v)
    terms = [
        (formal.one().scale(-1), r(u.D(2).D(1))),
        (chi(1).scale(-1), r(u.D(2))),
        (chi(2), r(u.D(1))),
        ((chi(1) * chi(2)).scale(-1), r(u)),
    ]
    out = VarPoly()
    for op, x in terms:
        br = bracket(x, rv)
        out = out + formal.act(op, br, _no_translate)
    return out


def _no_translate(c, dl, dmask):
    raise AlgebraError("unexpected translation")


def nk2_bracket_realized(u: Element, v: Element, cmap: N2ComponentMap) -> VarPoly:
    """The direct N_K=2 bracket with coefficients realized in the ordinary algebra."""
    return map_lambda(bracket(u, v), lambda y: realize_nk2(y, cmap))


def d2_on_components(x: Element, params: Mapping | None = None) -> Element:
    """Second odd derivation on ordinary components: i (G+ - G-)_(0)."""
    alg = x.alg
    gp = build_vector("G_plus", alg, params)
    gm = build_vector("G_minus", alg, params)
    return (mode_action(gp, 0, "", x) - mode_action(gm, 0, "", x)) * I


def d1_on_components(x: Element, params: Mapping | None = None) -> Element:
    """First odd derivation on ordinary components: (G+ + G-)_(0)."""
    alg = x.alg
    gp = build_vector("G_plus", alg, params)
    gm = build_vector("G_minus", alg, params)
    return mode_action(gp, 0, "", x) + mode_action(gm, 0, "", x)

"""Free-field algebras and the catalog of distinguished vectors."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Mapping

from . import formal
from .bracket import bracket, left_pull_sign, right_pull_sign, skew_sign
from .coeff import I, ONE, Scalar
from .elements import Algebra, AlgebraError, Element, nprod, translate_coeff
from .formal import CHI, UNIT, VarPoly, chi

HALF = Scalar.const(Fraction(1, 2))

Basis = Iterable[tuple[str, str | int]]


class AxiomError(AlgebraError):
    pass


def _parity(p) -> int:
    if isinstance(p, str):
        if p not in ("even", "odd"):
            raise AlgebraError(f"parity must be even or odd, got {p!r}")
        return 0 if p == "even" else 1
    return int(p) & 1


def _basis(basis: Basis) -> list[tuple[str, int]]:
    out = [(str(a), _parity(p)) for a, p in basis]
    names = [a for a, _ in out]
    if len(set(names)) != len(names):
        raise AlgebraError("duplicate basis names")
    return out


def const_bracket(alg: Algebra, value) -> VarPoly:
    return VarPoly({UNIT: alg.vacuum() * value})


def complete_by_skew(alg: Algebra) -> None:
    """Fill missing reversed table entries by skew-symmetry."""
    n = alg.sector.n
    for (i, j), val in list(alg.table.items()):
        if (j, i) in alg.table:
            continue
        pa, pb = alg.generators[i].parity, alg.generators[j].parity
        alg.table[(j, i)] = formal.substitute_skew(val, alg.sector, translate_coeff).scale(
            Scalar.const(skew_sign(n, pa, pb))
        )
    alg.clear_caches()


def check_generator_axioms(alg: Algebra) -> None:
    """Skew-symmetry on generator pairs, Jacobi on triples, quotient rules."""
    gens = [alg.gen(g.name) for g in alg.generators]
    for a in gens:
        for b in gens:
            if not skew_holds(a, b):
                raise AxiomError(f"skew-symmetry fails for {a} and {b}")
    for a in gens:
        for b in gens:
            for c in gens:
                if not jacobi_holds(a, b, c):
                    raise AxiomError(f"Jacobi identity fails for {a}, {b}, {c}")
    for gi, coef in alg.d2_rules.items():
        g = alg.gen(alg.generators[gi].name)
        for h in gens:
            if not quotient_rule_holds(g, h, coef):
                raise AxiomError(f"quotient rule for {g} is not compatible with brackets")


def skew_holds(a: Element, b: Element) -> bool:
    alg = a.alg
    n = alg.sector.n
    lhs = bracket(b, a)
    rhs = formal.substitute_skew(bracket(a, b), alg.sector, translate_coeff).scale(
        Scalar.const(skew_sign(n, a.parity or 0, b.parity or 0))
    )
    return lhs == rhs


def _pull_right(alg, pa: int, inner_outer: VarPoly, compute) -> VarPoly:
    """Sum over terms w*y of inner_outer of sign * w * compute(y)."""
    n = alg.sector.n
    out = VarPoly()
    for w, y in inner_outer.terms.items():
        val = compute(y)
        if val.is_zero():
            continue
        sg = right_pull_sign(n, pa, formal.word_parity(w))
        out = out + formal.mul_words_into(val, w, sg)
    return out


def jacobi_sides(a: Element, b: Element, c: Element) -> tuple[VarPoly, VarPoly]:
    """Both sides of the Jacobi identity in the variables Lambda, Gamma."""
    alg = a.alg
    n = alg.sector.n
    pa, pb = a.parity or 0, b.parity or 0
    bc = formal.rename_to_aux(bracket(b, c))
    lhs = _pull_right(alg, pa, bc, lambda y: bracket(a, y))
    r1 = VarPoly()
    for w, x in bracket(a, b).terms.items():
        val = formal.shift_to_sum(bracket(x, c))
        if val.is_zero():
            continue
        r1 = r1 + formal.mul_words_into(val, w, left_pull_sign(n, formal.word_parity(w)))
    r2 = _pull_right(alg, pb, bracket(a, c), lambda y: formal.rename_to_aux(bracket(b, y)))
    if n == 1:
        s1 = -1 if (pa + 1) & 1 else 1
        s2 = -1 if ((pa + 1) * (pb + 1)) & 1 else 1
    else:
        s1 = 1
        s2 = -1 if (pa * pb) & 1 else 1
    rhs = r1.scale(Scalar.const(s1)) + r2.scale(Scalar.const(s2))
    return lhs, rhs


def jacobi_holds(a, b, c) -> bool:
    lhs, rhs = jacobi_sides(a, b, c)
    return lhs == rhs


def quotient_rule_holds(g: Element, h: Element, coef: Scalar) -> bool:
    """D2 g = coef * D1 g is compatible with brackets against h.

    Both sides are evaluated with sesquilinearity before any rewriting.
    """
    gh = bracket(g, h)
    left2 = formal.mul_words_into(gh, (0, 0, 0, 1 << CHI[2]), -1)
    left1 = formal.mul_words_into(gh, (0, 0, 0, 1 << CHI[1]), -1)
    if left2 != left1.scale(coef):
        return False
    hg = bracket(h, g)
    sigma = -1 if (h.parity or 0) else 1
    right2 = formal.act((formal.dop(2) + chi(2)).scale(sigma), hg, translate_coeff)
    right1 = formal.act((formal.dop(1) + chi(1)).scale(sigma), hg, translate_coeff)
    return right2 == right1.scale(coef)


# ------------------------------------------------------------ constructors

def make_charged_free_fermion(basis: Basis, name: str = "Fch", check: bool = True) -> Algebra:
    """Sector 0: phi_a and phibar_a both carry the parity opposite to a."""
    b = _basis(basis)
    gens = [(f"phi_{a}", 1 - p) for a, p in b] + [(f"phibar_{a}", 1 - p) for a, p in b]
    alg = Algebra(name, 0, gens)
    for a, _ in b:
        alg.set_bracket(f"phi_{a}", f"phibar_{a}", const_bracket(alg, 1))
    complete_by_skew(alg)
    alg.meta.update(kind="cff", basis=b)
    if check:
        check_generator_axioms(alg)
    return alg


def make_bc_beta_gamma(basis: Basis | None = None, name: str = "bcbg", check: bool = True) -> Algebra:
    """Sector 0: one (gamma, c, b, beta) quadruple per basis element.

    With ``basis=None`` a single unsuffixed copy is built.
    """
    labels = [""] if basis is None else [f"_{a}" for a, _ in _basis(basis)]
    gens = []
    for s in labels:
        gens += [(f"gamma{s}", 0), (f"c{s}", 1), (f"b{s}", 1), (f"beta{s}", 0)]
    alg = Algebra(name, 0, gens)
    for s in labels:
        alg.set_bracket(f"beta{s}", f"gamma{s}", const_bracket(alg, 1))
        alg.set_bracket(f"b{s}", f"c{s}", const_bracket(alg, 1))
    complete_by_skew(alg)
    alg.meta.update(kind="bcbg", basis=None if basis is None else _basis(basis), labels=labels)
    if check:
        check_generator_axioms(alg)
    return alg


def make_susy_charged_free_fermion(basis: Basis, name: str = "Fch1", check: bool = True) -> Algebra:
    """Sector 1: phi_a has the parity of a, phibar_a the opposite one."""
    b = _basis(basis)
    gens = []
    for a, p in b:
        gens.append((f"phi_{a}", p))
    for a, p in b:
        gens.append((f"phibar_{a}", 1 - p))
    alg = Algebra(name, 1, gens)
    for a, _ in b:
        alg.set_bracket(f"phi_{a}", f"phibar_{a}", const_bracket(alg, 1))
    complete_by_skew(alg)
    alg.meta.update(kind="susy_cff", basis=b)
    if check:
        check_generator_axioms(alg)
    return alg


def make_n2_bc_beta_gamma(basis: Basis, name: str = "N2bcbg", check: bool = True) -> Algebra:
    """Sector 2 with the quotient D2 X = i D1 X for every generator X."""
    b = _basis(basis)
    gens = [(f"Phi_{a}", p) for a, p in b] + [(f"Phibar_{a}", 1 - p) for a, p in b]
    alg = Algebra(name, 2, gens)
    for a, _ in b:
        val = VarPoly(
            {
                (0, 0, 0, 1 << CHI[1]): alg.vacuum() * (-I),
                (0, 0, 0, 1 << CHI[2]): alg.vacuum(),
            }
        )
        alg.set_bracket(f"Phi_{a}", f"Phibar_{a}", val)
    complete_by_skew(alg)
    for a, _ in b:
        alg.set_d2_rule(f"Phi_{a}", I)
        alg.set_d2_rule(f"Phibar_{a}", I)
    alg.meta.update(kind="n2_bcbg", basis=b)
    if check:
        check_generator_axioms(alg)
    return alg


def make_custom(
    name: str,
    sector: int,
    generators: Iterable[tuple[str, str | int]],
    brackets: Mapping[tuple[str, str], VarPoly] | None = None,
    d2_rules: Mapping[str, object] | None = None,
    check: bool = True,
) -> Algebra:
    alg = Algebra(name, sector, [(g, _parity(p)) for g, p in generators])
    for (a, b), v in (brackets or {}).items():
        alg.set_bracket(a, b, v)
    complete_by_skew(alg)
    for g, c in (d2_rules or {}).items():
        alg.set_d2_rule(g, Scalar.coerce(c))
    alg.meta.update(kind="custom")
    if check:
        check_generator_axioms(alg)
    return alg


def algebra_from_json(data: dict | str, check: bool = True) -> Algebra:
    """Build an algebra from the JSON file format (see README)."""
    from .render import lambda_from_json

    if isinstance(data, str):
        data = json.loads(data)
    kind = data.get("kind", "custom")
    basis = data.get("basis")
    if kind == "cff":
        return make_charged_free_fermion(basis.items(), data.get("name", "Fch"), check)
    if kind == "bcbg":
        return make_bc_beta_gamma(None if basis is None else basis.items(), data.get("name", "bcbg"), check)
    if kind == "susy_cff":
        return make_susy_charged_free_fermion(basis.items(), data.get("name", "Fch1"), check)
    if kind == "n2_bcbg":
        return make_n2_bc_beta_gamma(basis.items(), data.get("name", "N2bcbg"), check)
    alg = Algebra(data["name"], int(data["sector"]), [(g["name"], _parity(g["parity"])) for g in data["generators"]])
    for entry in data.get("brackets", []):
        val = entry["value"]
        if isinstance(val, str):
            from .cli.parser import parse_lambda_value

            lp = parse_lambda_value(val, alg)
        else:
            lp = lambda_from_json(alg, val)
        alg.set_bracket(entry["left"], entry["right"], lp)
    complete_by_skew(alg)
    for rule in data.get("d2_rules", []):
        from .coeff import from_json

        c = rule["coeff"]
        alg.set_d2_rule(rule["gen"], from_json(c) if isinstance(c, list) else _scalar_literal(c))
    alg.meta.update(kind="custom")
    if check:
        check_generator_axioms(alg)
    return alg


def _scalar_literal(s) -> Scalar:
    if isinstance(s, (int, float)):
        return Scalar.const(Fraction(str(s)))
    s = str(s).strip().replace(" ", "")
    if s in ("i", "+i"):
        return I
    if s == "-i":
        return -I
    return Scalar.const(Fraction(s))


def algebra_to_json(alg: Algebra) -> dict:
    from .render import lambda_json

    kind = alg.meta.get("kind", "custom")
    if kind != "custom":
        basis = alg.meta.get("basis")
        return {
            "kind": kind,
            "name": alg.name,
            "basis": None if basis is None else {a: ("even" if p == 0 else "odd") for a, p in basis},
        }
    from .coeff import to_json

    return {
        "kind": "custom",
        "name": alg.name,
        "sector": alg.sector.n,
        "generators": [{"name": g.name, "parity": "odd" if g.parity else "even"} for g in alg.generators],
        "brackets": [
            {"left": alg.generators[i].name, "right": alg.generators[j].name, "value": lambda_json(v, alg)}
            for (i, j), v in sorted(alg.table.items())
        ],
        "d2_rules": [{"gen": alg.generators[g].name, "coeff": to_json(c)} for g, c in alg.d2_rules.items()],
    }


# ------------------------------------------------------------ vector catalog

def shift_param(a: str) -> Scalar:
    return Scalar.param(f"t_{a}")


def _t(params: Mapping | None, a: str) -> Scalar:
    if params and a in params:
        return Scalar.coerce(params[a])
    return shift_param(a)


def _need(alg: Algebra, kind: str | tuple, vec: str):
    kinds = (kind,) if isinstance(kind, str) else kind
    if alg.meta.get("kind") not in kinds:
        raise AlgebraError(f"vector {vec} needs an algebra of kind {'/'.join(kinds)}")


def _pairs(alg):
    for a, p in alg.meta["basis"]:
        yield a, p


def _susy_pair(alg, a):
    return alg.gen(f"phi_{a}"), alg.gen(f"phibar_{a}")


def t_standard(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "T_st")
    out = alg.zero()
    for a, p in _pairs(alg):
        f, fb = _susy_pair(alg, a)
        out = out + nprod(f.D(), fb.D())
        out = out + (nprod(f.d(), fb) if p == 0 else nprod(f, fb.d()))
    return out


def t_shifted(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "T_sh")
    out = alg.zero()
    for a, p in _pairs(alg):
        t = _t(params, a)
        f, fb = _susy_pair(alg, a)
        x = nprod(f.d(), fb)
        y = nprod(f, fb.d())
        z = nprod(f.D(), fb.D())
        if p == 0:
            out = out + x * (t + 1) + y * t + z
        else:
            out = out + x * t + y * (t + 1) + z
    return out


def t_ghost(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "T_ghost")
    out = alg.zero()
    for a, _ in _pairs(alg):
        f, fb = _susy_pair(alg, a)
        out = out + nprod(f, fb).d() * _t(params, a)
    return out


def j_standard(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "J_st")
    out = alg.zero()
    for a, p in _pairs(alg):
        f, fb = _susy_pair(alg, a)
        out = out + (nprod(f.D(), fb) if p == 0 else nprod(fb.D(), f))
    return out


def j_ghost(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "J_ghost")
    out = alg.zero()
    for a, p in _pairs(alg):
        f, fb = _susy_pair(alg, a)
        if p == 0:
            v = nprod(f.D(), fb) + nprod(f, fb.D())
        else:
            v = nprod(fb.D(), f) + nprod(fb, f.D())
        out = out + v * _t(params, a)
    return out


def j_shifted(alg: Algebra, params=None) -> Element:
    return j_standard(alg, params) + j_ghost(alg, params)


def brst_d(alg: Algebra, params=None) -> Element:
    _need(alg, "susy_cff", "d")
    out = alg.zero()
    for a, _ in _pairs(alg):
        f, fb = _susy_pair(alg, a)
        out = out + nprod(f.D(), fb.D())
    return out


def _bcbg_quads(alg: Algebra):
    _need(alg, "bcbg", "component field")
    for s in alg.meta["labels"]:
        a = s[1:] if s else None
        yield a, (alg.gen(f"gamma{s}"), alg.gen(f"c{s}"), alg.gen(f"b{s}"), alg.gen(f"beta{s}"))


def _tc(params, a):
    if a is None:
        return Scalar.coerce(params.get("", Scalar.param("t"))) if params else Scalar.param("t")
    return _t(params, a)


def l_standard(alg: Algebra, params=None) -> Element:
    if alg.meta.get("kind") == "cff":
        return _osp_l(alg)
    out = alg.zero()
    for _, (g, c, b, be) in _bcbg_quads(alg):
        out = out + (nprod(c.d(), b) - nprod(c, b.d()) + nprod(g.d(), be) * 2) * HALF
    return out


def g_standard(alg: Algebra, params=None) -> Element:
    if alg.meta.get("kind") == "cff":
        return _osp_g(alg)
    out = alg.zero()
    for _, (g, c, b, be) in _bcbg_quads(alg):
        out = out + nprod(c, be) + nprod(g.d(), b)
    return out


def l_shifted(alg: Algebra, params=None) -> Element:
    out = alg.zero()
    for a, (g, c, b, be) in _bcbg_quads(alg):
        t = _tc(params, a)
        v = (
            nprod(c, b.d()) * (t - 1)
            + nprod(c.d(), b) * (t + 1)
            + nprod(g, be.d()) * t
            + nprod(g.d(), be) * (t + 2)
        )
        out = out + v * HALF
    return out


def g_shifted(alg: Algebra, params=None) -> Element:
    out = alg.zero()
    for a, (g, c, b, be) in _bcbg_quads(alg):
        t = _tc(params, a)
        out = out + nprod(g, b.d()) * t + nprod(g.d(), b) * (t + 1) + nprod(c, be)
    return out


def g_plus(alg: Algebra, params=None) -> Element:
    out = alg.zero()
    for _, (g, c, b, be) in _bcbg_quads(alg):
        out = out + nprod(c, be)
    return out


def g_minus(alg: Algebra, params=None) -> Element:
    out = alg.zero()
    for a, (g, c, b, be) in _bcbg_quads(alg):
        t = _tc(params, a)
        out = out + nprod(g.d(), b) * (t + 1) + nprod(g, b.d()) * t
    return out


def j_component(alg: Algebra, params=None) -> Element:
    out = alg.zero()
    for a, (g, c, b, be) in _bcbg_quads(alg):
        t = _tc(params, a)
        out = out + nprod(c, b) * (t + 1) + nprod(g, be) * t
    return out


def _osp_names(alg):
    names = {a for a, _ in alg.meta["basis"]}
    if names != {"half", "one"}:
        raise AlgebraError("the osp(1|2) presentation needs basis names 'half' and 'one'")
    return (
        alg.gen("phi_half"),
        alg.gen("phibar_half"),
        alg.gen("phi_one"),
        alg.gen("phibar_one"),
    )


def _osp_l(alg):
    ph, phb, p1, p1b = _osp_names(alg)
    return nprod(phb, ph.d()) * (-HALF) + nprod(phb.d(), ph) * HALF + nprod(p1.d(), p1b)


def _osp_g(alg):
    ph, phb, p1, p1b = _osp_names(alg)
    return nprod(phb, p1b) + nprod(p1.d(), ph)


def make_osp_presentation(check: bool = True) -> Algebra:
    """The charged free fermions on a (1|1)-dimensional space, named as for osp(1|2)."""
    return make_charged_free_fermion([("half", "odd"), ("one", "even")], name="Fosp", check=check)


# renaming of the osp presentation onto the bc-beta-gamma system (parities flip)
OSP_RENAMING = {"phi_half": "b", "phibar_half": "c", "phibar_one": "beta", "phi_one": "gamma"}


def p_shifted(alg: Algebra, params=None) -> Element:
    _need(alg, "n2_bcbg", "P_sh")
    out = alg.zero()
    for a, p in _pairs(alg):
        t = _t(params, a)
        f, fb = alg.gen(f"Phi_{a}"), alg.gen(f"Phibar_{a}")
        if p == 0:
            v = nprod(f.D(1), fb) * (t + 1) + nprod(f, fb.D(1)) * t
        else:
            v = nprod(fb.D(1), f) * (t + 1) + nprod(fb, f.D(1)) * t
        out = out + v
    return out * (-I)


CATALOG = {
    "T_st": t_standard,
    "T_sh": t_shifted,
    "T_ghost": t_ghost,
    "J_st": j_standard,
    "J_ghost": j_ghost,
    "J_sh": j_shifted,
    "d": brst_d,
    "L_st": l_standard,
    "G_st": g_standard,
    "L_sh": l_shifted,
    "G_sh": g_shifted,
    "G_plus": g_plus,
    "G_minus": g_minus,
    "J_comp": j_component,
    "P_sh": p_shifted,
}


def build_vector(name: str, alg: Algebra, params: Mapping | None = None) -> Element:
    if name not in CATALOG:
        raise AlgebraError(f"unknown catalog vector {name!r}; known: {', '.join(sorted(CATALOG))}")
    return CATALOG[name](alg, params)


def central_charge_formula(alg: Algebra, params: Mapping | None = None) -> Scalar:
    """Sum over the basis of 6 t_a + 3."""
    out = Scalar()
    for a, _ in alg.meta["basis"]:
        out = out + _t(params, a) * 6 + 3
    return out

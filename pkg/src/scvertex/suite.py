"""Named verification checks over the free-field algebras.

Each check builds its own algebras, so checks are independent and may run
in parallel worker processes.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import brst, reduce, verify
from .bracket import bracket
from .coeff import Scalar
from .elements import nprod
from .fields import (
    build_vector,
    central_charge_formula,
    jacobi_holds,
    make_bc_beta_gamma,
    make_n2_bc_beta_gamma,
    make_osp_presentation,
    make_susy_charged_free_fermion,
    skew_holds,
)
from .goldens import free_fermion_tables, n2_susy_table
from .render import element_text, lambda_text
from .sampling import SampleConfig, pool

MIXED = [("a", "even"), ("b", "odd")]


@dataclass
class Outcome:
    name: str
    ok: bool
    detail: str
    witness: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}: {self.detail}"

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail, "witness": self.witness}


def _golden_block(name, entries) -> Outcome:
    for g in entries:
        got = bracket(g.left, g.right)
        if got != g.expected:
            alg = g.left.alg
            return Outcome(name, False, f"mismatch at {g.label}", {
                "entry": g.label, "computed": lambda_text(got, alg), "expected": lambda_text(g.expected, alg)})
    return Outcome(name, True, f"{len(entries)} brackets agree")


def free_fermion_brackets() -> Outcome:
    return _golden_block("free fermion quadratic brackets", free_fermion_tables()["quadratic"])


def shifted_blocks() -> Outcome:
    return _golden_block("brackets among the shifted building blocks", free_fermion_tables()["shifted"])


def n2_blocks() -> Outcome:
    return _golden_block("brackets for the second supersymmetry", free_fermion_tables()["n2"])


def n2_susy_brackets() -> Outcome:
    """N_K=2 brackets: the engine agrees with the reduction to ordinary fields."""
    table = n2_susy_table()
    cmap = reduce.component_map_nk2(table[0].left.alg)
    agree = 0
    for g in table:
        direct = reduce.nk2_bracket_realized(g.left, g.right, cmap)
        oracle = reduce.nk2_bracket_via_nk1(g.left, g.right, cmap)
        if direct != oracle:
            return Outcome("N_K=2 SUSY bc-beta-gamma brackets", False, f"reduction disagrees at {g.label}",
                           {"entry": g.label})
        agree += 1
    return Outcome("N_K=2 SUSY bc-beta-gamma brackets", True, f"{agree} brackets match the component reduction")


def _expect_c(name, fn, args, expected) -> Outcome:
    r = verify.run_check(name, fn, *args)
    if r.status != "ok":
        return Outcome(name, False, r.message, r.witness)
    if r.central_charge != expected:
        return Outcome(name, False, f"central charge {r.central_charge}, expected {expected}",
                       {"central_charge": str(r.central_charge), "expected": str(expected)})
    return Outcome(name, True, f"c = {r.central_charge}")


def shifted_superconformal() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    return _expect_c("shifted superconformal vector", verify.check_susy_superconformal,
                     [build_vector("T_sh", A)], central_charge_formula(A))


def standard_superconformal() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    return _expect_c("standard superconformal vector", verify.check_susy_superconformal,
                     [build_vector("T_st", A)], Scalar.const(3 * len(MIXED)))


def standard_is_specialization() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    zero = {a: 0 for a, _ in MIXED}
    ok = build_vector("T_sh", A, zero) == build_vector("T_st", A)
    return Outcome("standard vector is the zero shift", ok, "T_sh at t = 0 equals T_st" if ok else "differs")


def generator_weights() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    T = build_vector("T_sh", A)
    half = Scalar.const(1) / 2
    ta, tb = Scalar.param("t_a"), Scalar.param("t_b")
    expected = {
        "phi_a": -ta * half, "phibar_a": (ta + 1) * half,
        "phi_b": (tb + 1) * half, "phibar_b": -tb * half,
    }
    for g, w in expected.items():
        rep = verify.conformal_weight(T, A.gen(g))
        if rep.delta != w or not rep.primary:
            return Outcome("primary generators", False, f"{g} has weight {rep.delta}",
                           {"generator": g, "weight": str(rep.delta), "expected": str(w)})
    return Outcome("primary generators", True, "all generators primary with the expected weights")


def n2_susy_pair() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    return _expect_c("N=2 structure from T_sh and J_sh", verify.check_n2_susy_pair,
                     [build_vector("T_sh", A), build_vector("J_sh", A)], central_charge_formula(A))


def component_fields() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    cmap = reduce.component_map_nk1(A)
    B = cmap.target
    body, theta = reduce.components_nk1(build_vector("T_sh", A), cmap)
    ok1 = body == build_vector("G_plus", B) + build_vector("G_minus", B) and theta == build_vector("L_sh", B) * 2
    body, theta = reduce.components_nk1(build_vector("J_sh", A), cmap)
    ok2 = body == build_vector("J_comp", B) and theta == build_vector("G_minus", B) - build_vector("G_plus", B)
    ok = ok1 and ok2
    return Outcome("component fields of T_sh and J_sh", ok,
                   "components match L, J, G+ and G-" if ok else "component mismatch",
                   {} if ok else {"T_sh": ok1, "J_sh": ok2})


def n2_components() -> Outcome:
    B = make_bc_beta_gamma(MIXED)
    vecs = [build_vector(n, B) for n in ("L_sh", "J_comp", "G_plus", "G_minus")]
    expected = central_charge_formula(B)
    return _expect_c("N=2 relations among L, J, G+, G-", verify.check_n2_component, vecs, expected)


def n1_components() -> Outcome:
    B = make_bc_beta_gamma(MIXED)
    return _expect_c("N=1 relations among L and G", verify.check_n1_pair,
                     [build_vector("L_sh", B), build_vector("G_sh", B)], central_charge_formula(B))


def bc_beta_gamma() -> Outcome:
    B = make_bc_beta_gamma()
    return _expect_c("bc-beta-gamma superconformal structure", verify.check_n1_pair,
                     [build_vector("L_st", B), build_vector("G_st", B)], Scalar.const(3))


def osp_presentation() -> Outcome:
    O = make_osp_presentation()
    return _expect_c("ghost system from the osp presentation", verify.check_n1_pair,
                     [build_vector("L_st", O), build_vector("G_st", O)], Scalar.const(-3))


def nk2_superconformal() -> Outcome:
    N = make_n2_bc_beta_gamma(MIXED)
    return _expect_c("N_K=2 superconformal vector P_sh", verify.check_nk2_superconformal,
                     [build_vector("P_sh", N)], central_charge_formula(N))


def ansatz() -> Outcome:
    A = make_susy_charged_free_fermion([("a", "even")])
    f, fb = A.gen("phi_a"), A.gen("phibar_a")
    system = verify.ansatz_constraints([nprod(f.d(), fb), nprod(f, fb.d()), nprod(f.D(), fb.D())])
    t = Scalar.param("t")
    c, rest = system.solve_central([t + 1, t, 1])
    ok = c == t * 6 + 3 and not rest
    return Outcome("quadratic ansatz constraints", ok, f"(t+1, t, 1) solves with c = {c}",
                   {} if ok else {"residual": [system.witness(e) for e in rest]})


def charges() -> Outcome:
    A = make_susy_charged_free_fermion(MIXED)
    ta, tb = Scalar.param("t_a"), Scalar.param("t_b")
    expected = {"phi_a": ta, "phibar_a": -ta - 1, "phi_b": -tb - 1, "phibar_b": tb}
    for g, m in expected.items():
        got = brst.charge_of(A.gen(g)).eigenvalue
        if got != m:
            return Outcome("charges of the generators", False, f"{g} has charge {got}",
                           {"generator": g, "charge": str(got), "expected": str(m)})
    return Outcome("charges of the generators", True, "phi_a = t_a, phibar_a = -t_a - 1")


def brst_properties(seed: int = 0) -> Outcome:
    name = "BRST differential and homotopy"
    A = make_susy_charged_free_fermion(MIXED)
    gens = [A.gen(g.name) for g in A.generators]
    vectors = [x for g in gens for x in brst.tower(g, 3)]
    vectors += pool(A, seed, 40, SampleConfig(max_length=3, max_d=2))
    for label, rep in (("Q^2 = 0", brst.check_q_squared(vectors)),
                       ("H^2 = 0", brst.check_h_squared(vectors)),
                       ("both forms of Q agree", brst.check_q_forms(vectors))):
        if not rep.ok:
            v, r = rep.failures[0]
            return Outcome(name, False, f"{label} fails", {"vector": element_text(v), "value": element_text(r)})
    for g in gens:
        for img, shift in ((brst.brst_q(g), 1), (brst.homotopy_h(g.D()), -1)):
            if img.is_zero():
                continue
            src = g if shift == 1 else g.D()
            k = brst.charge_of(img, strict=False)
            want = brst.charge_of(src).eigenvalue + shift
            if not k.is_eigenvector or k.eigenvalue != want:
                return Outcome(name, False, "charge shift wrong", {"vector": element_text(src)})
    return Outcome(name, True, f"{len(vectors)} vectors checked")


def axioms(seed: int = 0) -> Outcome:
    """Skew-symmetry and Jacobi on random monomial triples, sector by sector."""
    import random

    name = "skew-symmetry and Jacobi identity"
    algs = [make_bc_beta_gamma(MIXED), make_susy_charged_free_fermion(MIXED), make_n2_bc_beta_gamma([("a", "even")])]
    count = 0
    for alg in algs:
        rng = random.Random(seed)
        vecs = pool(alg, seed, 12, SampleConfig(max_length=2, max_d=1))
        for _ in range(8):
            a, b, c = (rng.choice(vecs) for _ in range(3))
            if not skew_holds(a, b):
                return Outcome(name, False, "skew-symmetry fails", {"a": element_text(a), "b": element_text(b)})
            if not jacobi_holds(a, b, c):
                return Outcome(name, False, "Jacobi identity fails",
                               {"a": element_text(a), "b": element_text(b), "c": element_text(c)})
            count += 1
    return Outcome(name, True, f"{count} triples in sectors 0, 1 and 2")


FULL = [
    free_fermion_brackets,
    shifted_blocks,
    n2_blocks,
    n2_susy_brackets,
    shifted_superconformal,
    standard_superconformal,
    standard_is_specialization,
    generator_weights,
    n2_susy_pair,
    component_fields,
    n1_components,
    n2_components,
    bc_beta_gamma,
    osp_presentation,
    nk2_superconformal,
    ansatz,
    charges,
    brst_properties,
    axioms,
]

QUICK = [free_fermion_brackets, shifted_superconformal, charges]

SUITES = {"paper": FULL, "quick": QUICK}


def _call(fn, seed):
    try:
        if fn in (brst_properties, axioms):
            return fn(seed)
        return fn()
    except Exception as e:  # a crashing check is reported, not propagated
        return Outcome(fn.__name__, False, f"error: {e}", {"error": repr(e)})


def run_suite(name: str = "paper", jobs: int = 1, seed: int = 0) -> list[Outcome]:
    checks = SUITES[name]
    if jobs <= 1:
        return [_call(fn, seed) for fn in checks]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(_call, checks, [seed] * len(checks)))

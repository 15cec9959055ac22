import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scvertex.bracket import apply_operator, bracket, mode_action, parse_mask
from scvertex.coeff import I, Scalar
from scvertex.elements import AlgebraError, nprod
from scvertex.fields import build_vector, make_bc_beta_gamma, make_susy_charged_free_fermion, skew_holds
from scvertex.formal import chi, delop, dop, lam
from scvertex.goldens import free_fermion_tables, n2_susy_table
from scvertex.sampling import SampleConfig, random_monomial

TABLES = free_fermion_tables()
N2 = n2_susy_table()
HALF = Scalar.const(1) / 2


@pytest.mark.parametrize("entry", TABLES["quadratic"], ids=lambda g: g.label)
def test_quadratic_free_fermion_table(entry):
    assert bracket(entry.left, entry.right) == entry.expected


@pytest.mark.parametrize("entry", TABLES["shifted"], ids=lambda g: g.label)
def test_shifted_building_blocks(entry):
    assert bracket(entry.left, entry.right) == entry.expected


@pytest.mark.parametrize("entry", TABLES["n2"], ids=lambda g: g.label)
def test_second_supersymmetry_blocks(entry):
    assert bracket(entry.left, entry.right) == entry.expected


def test_table_sizes():
    assert (len(TABLES["quadratic"]), len(TABLES["shifted"]), len(TABLES["n2"])) == (28, 9, 10)


@pytest.mark.parametrize("entry", N2[:8], ids=lambda g: g.label)
def test_n2_susy_brackets(entry):
    assert bracket(entry.left, entry.right) == entry.expected


def test_n2_derivative_brackets_corrected():
    # the lambda^2 vacuum term comes out as +i lambda^2 and its skew as -i lambda^2
    xd, dx = N2[8], N2[9]
    vac = xd.left.alg.vacuum()
    corr = apply_operator(lam(2).scale(Scalar.const(2) * I), vac)
    assert bracket(xd.left, xd.right) == xd.expected + corr
    assert bracket(dx.left, dx.right) == dx.expected - corr


def test_basic_pair(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    one = apply_operator(lam(0), susy_even.vacuum())
    assert bracket(f, fb) == one
    assert bracket(fb, f) == one
    assert bracket(f, f).is_zero()


def test_translated_product_with_generator(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    assert bracket(nprod(f.d(), fb), f) == apply_operator(delop(), f)


def test_shifted_block_examples(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    X, Z, U = nprod(f.d(), fb), nprod(f.D(), fb.D()), nprod(f.D(), fb)
    d, l, x, D = delop(), lam(), chi(), dop()
    expected = (apply_operator(d + l + x * D, Z) + apply_operator((lam(2) * x).scale(HALF), susy_even.vacuum())
                - apply_operator(l * x, U))
    assert bracket(X, Z) == expected
    assert bracket(Z, Z) == apply_operator(d + l.scale(Scalar.const(2)), Z)


def test_sector_two_generators(n2_even):
    P, Pb = n2_even.gen("Phi_a"), n2_even.gen("Phibar_a")
    assert bracket(P, P).is_zero()
    assert bracket(Pb, Pb).is_zero()
    assert bracket(P, Pb) == apply_operator(chi(1).scale(-I) + chi(2), n2_even.vacuum())


def test_n2_current_self_bracket(n2_even):
    P, Pb = n2_even.gen("Phi_a"), n2_even.gen("Phibar_a")
    X = nprod(P.D(1), Pb)
    cov = delop().scale(Scalar.const(2)) + lam().scale(Scalar.const(2)) + chi(1) * dop(1) + chi(2) * dop(2)
    expected = apply_operator(cov.scale(I), X) - apply_operator(lam() * chi(1) * chi(2), n2_even.vacuum())
    assert bracket(X, X) == expected


def test_cross_algebra(susy_even, susy_mixed):
    with pytest.raises(AlgebraError):
        bracket(susy_even.gen("phi_a"), susy_mixed.gen("phi_a"))


def test_modes(susy_even):
    f = susy_even.gen("phi_a")
    T = build_vector("T_st", susy_even)
    assert mode_action(T, 0, "1", f) == f.D()
    d = build_vector("d", susy_even)
    assert mode_action(d, 0, "1", f.D()).is_zero()
    assert mode_action(T, 5, "0", susy_even.vacuum()).is_zero()


def test_mode_factorial(bcbg_one):
    g = bcbg_one.gen("gamma_a")
    be = bcbg_one.gen("beta_a")
    # [beta lambda d^2 gamma] = (d + lambda)^2 gamma's bracket = lambda^2, so beta_(2) d^2 gamma = 2
    assert mode_action(be, 2, "0", g.d().d()) == bcbg_one.vacuum() * 2


def test_bad_mask(susy_even):
    with pytest.raises(AlgebraError):
        parse_mask(susy_even, "01")


def test_bc_beta_gamma_constants():
    B = make_bc_beta_gamma()
    vac = B.vacuum()
    one = apply_operator(lam(0), vac)
    assert bracket(B.gen("beta"), B.gen("gamma")) == one
    assert bracket(B.gen("gamma"), B.gen("beta")) == -one
    assert bracket(B.gen("b"), B.gen("c")) == one
    assert bracket(B.gen("c"), B.gen("b")) == one
    assert bracket(B.gen("b"), B.gen("b")).is_zero()


S1 = make_susy_charged_free_fermion([("a", "even"), ("b", "odd")])


@given(st.integers(0, 10**6))
def test_skew_on_quadratic_pairs(seed):
    rng = random.Random(seed)
    cfg = SampleConfig(max_length=2, max_d=1)
    a, b = random_monomial(S1, rng, cfg), random_monomial(S1, rng, cfg)
    assert skew_holds(a, b)


def test_polynomial_output(susy_mixed):
    T = build_vector("T_sh", susy_mixed)
    # super-Virasoro: the highest term is (c/3) lambda^2 chi
    assert max(w[0] for w in bracket(T, T).terms) == 2

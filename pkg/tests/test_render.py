import json
import random

from hypothesis import given
from hypothesis import strategies as st

from scvertex.bracket import bracket
from scvertex.cli.parser import parse_lambda_value
from scvertex.coeff import I
from scvertex.elements import nprod
from scvertex.fields import build_vector, make_n2_bc_beta_gamma, make_susy_charged_free_fermion
from scvertex.render import (
    element_from_json,
    element_json,
    element_text,
    lambda_from_json,
    lambda_json,
    lambda_latex,
    lambda_text,
    render,
)
from scvertex.sampling import SampleConfig, random_monomial

from conftest import MIXED

S1 = make_susy_charged_free_fermion(MIXED)
N2 = make_n2_bc_beta_gamma([("a", "even")])


def test_latex_of_current_block(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    Z = nprod(f.D(), fb.D())
    out = lambda_latex(bracket(Z, Z), susy_even)
    assert out == ("(D \\phi_{a} \\partial D \\phi^{\\bar a} + \\partial D \\phi_{a} D \\phi^{\\bar a})"
                   " + 2\\lambda D \\phi_{a} D \\phi^{\\bar a}")


def test_zero(susy_even):
    assert render(susy_even.zero()) == "0"
    f = susy_even.gen("phi_a")
    assert render(bracket(f, f), "text", susy_even) == "0"
    assert render(bracket(f, f), "latex", susy_even) == "0"


def test_text_forms(susy_even, n2_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    assert lambda_text(bracket(nprod(f.d(), fb), f), susy_even) == "d(phi_a)"
    P, Pb = n2_even.gen("Phi_a"), n2_even.gen("Phibar_a")
    assert lambda_text(bracket(P, Pb), n2_even) == "-i*chi1 + chi2"
    assert element_text(P.D(1) * (1 - 2 * I)) == "(1 - 2*i)*D1(Phi_a)"


def test_deterministic_json(susy_mixed):
    T = build_vector("T_sh", susy_mixed)
    assert render(T, "json") == render(T, "json")
    data = json.loads(render(T, "json"))
    assert data["algebra"] == susy_mixed.name


@given(st.integers(0, 10**6))
def test_json_round_trip(seed):
    rng = random.Random(seed)
    cfg = SampleConfig(max_length=2, max_d=1)
    a, b = random_monomial(S1, rng, cfg), random_monomial(S1, rng, cfg)
    v = nprod(a, b) * 3 + a
    assert element_from_json(S1, json.loads(json.dumps(element_json(v)))) == v
    p = bracket(a, b)
    again = lambda_from_json(S1, json.loads(render(p, "json", S1)))
    assert again == p
    assert render(again, "json", S1) == render(p, "json", S1)


@given(st.integers(0, 10**6))
def test_text_round_trip(seed):
    rng = random.Random(seed)
    cfg = SampleConfig(max_length=2, max_d=1)
    a, b = random_monomial(S1, rng, cfg), random_monomial(S1, rng, cfg)
    p = bracket(a, b)
    assert parse_lambda_value(lambda_text(p, S1), S1) == p


def test_text_round_trip_sector_two():
    P = build_vector("P_sh", N2)
    p = bracket(P, P)
    assert parse_lambda_value(lambda_text(p, N2), N2) == p
    assert lambda_from_json(N2, lambda_json(p, N2)) == p

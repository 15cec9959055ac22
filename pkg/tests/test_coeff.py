from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scvertex.coeff import I, ONE, ZERO, GaussQ, Scalar, from_json, render_latex, render_text, to_json

q = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gauss = st.builds(GaussQ, q, q)
monos = st.lists(st.tuples(st.sampled_from(["t_a", "t_b", "m1"]), st.integers(1, 2)), max_size=2)


@st.composite
def scalars(draw):
    out = Scalar()
    for _ in range(draw(st.integers(0, 3))):
        c = Scalar.const(draw(gauss))
        for name, k in draw(monos):
            c = c * Scalar.param(name, k)
        out = out + c
    return out


def test_gaussian_norm():
    z = Scalar.const(GaussQ(Fraction(1, 2), 1))
    w = Scalar.const(GaussQ(Fraction(1, 2), -1))
    assert z * w == Scalar.const(Fraction(5, 4))


def test_central_charges_add():
    c = (Scalar.param("t_a") * 6 + 3) + (Scalar.param("t_b") * 6 + 3)
    assert c == Scalar.param("t_a") * 6 + Scalar.param("t_b") * 6 + 6
    assert render_text(c) == "6*t_a + 6*t_b + 6"


def test_i_squared():
    assert (-I) * I == ONE
    assert I * I == -ONE


def test_eval_examples():
    ta = Scalar.param("t_a")
    assert (ta * 6 + 3).eval({"t_a": 0}) == Scalar.const(3)
    assert ta.eval({}) == ta
    assert (ta * 2 + 1).eval({"t_a": Fraction(-1, 2)}) == ZERO


def test_exact_division():
    half = Scalar.const(1) / 2
    assert half * 2 == ONE
    assert Scalar.const(GaussQ(1, 1)).as_constant().inverse() == GaussQ(Fraction(1, 2), Fraction(-1, 2))


def test_rendering():
    assert render_text(ZERO) == "0"
    assert render_text(-Scalar.param("t_a") - 1) == "-t_a - 1"
    assert render_latex(Scalar.param("t_a") * 6 + 3) == "6t_{a} + 3"


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        GaussQ(0, 0).inverse()


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == ZERO
    assert a * ONE == a


@given(scalars(), scalars(), st.sampled_from([0, 1, Fraction(-1, 2), GaussQ(0, 1)]))
def test_eval_is_homomorphism(a, b, v):
    env = {"t_a": v, "t_b": 2, "m1": Fraction(1, 3)}
    assert (a * b).eval(env) == a.eval(env) * b.eval(env)
    assert (a + b).eval(env) == a.eval(env) + b.eval(env)


@given(scalars())
def test_json_round_trip(a):
    assert from_json(to_json(a)) == a

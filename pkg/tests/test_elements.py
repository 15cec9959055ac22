import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from scvertex.coeff import I
from scvertex.elements import AlgebraError, Node, apply_translation, normal_product, normalize, nprod
from scvertex.fields import build_vector, make_bc_beta_gamma, make_susy_charged_free_fermion
from scvertex.sampling import SampleConfig, random_monomial, random_tree

from conftest import t


def test_d_kills_vacuum(susy_even):
    assert susy_even.vacuum().D().is_zero()
    assert apply_translation(susy_even.vacuum(), "d").is_zero()


def test_even_leibniz(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    assert nprod(f, fb).d() == nprod(f.d(), fb) + nprod(f, fb.d())


def test_signed_leibniz(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    assert nprod(f.D(), fb.D()).D() == nprod(f.d(), fb.D()) - nprod(f.D(), fb.d())


def test_reordering_with_constant_bracket(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    assert nprod(fb, f) == nprod(f, fb)


def test_vacuum_is_unit(susy_even):
    f = susy_even.gen("phi_a")
    assert normal_product(f, susy_even.vacuum()) == f
    assert normal_product(susy_even.vacuum(), f) == f


def test_odd_square_vanishes(susy_even):
    fb = susy_even.gen("phibar_a")
    assert fb.parity == 1
    assert nprod(fb, fb).is_zero()


def test_shifted_tree_at_zero_is_standard(susy_even):
    f, fb = susy_even.gen("phi_a"), susy_even.gen("phibar_a")
    ta = t()
    tree = Node("sum", (
        Node("scale", (Node("prod", (Node("trans", (Node("gen", value="phi_a"),), "d"), Node("gen", value="phibar_a"))),), ta + 1),
        Node("scale", (Node("prod", (Node("gen", value="phi_a"), Node("trans", (Node("gen", value="phibar_a"),), "d"))),), ta),
        Node("prod", (Node("elem", value=f.D()), Node("elem", value=fb.D()))),
    ))
    v = normalize(tree, susy_even)
    assert v == build_vector("T_sh", susy_even)
    assert v.eval({"t_a": 0}) == build_vector("T_st", susy_even)
    assert normalize(Node("elem", value=v), susy_even) == v


def test_quasi_associativity_correction():
    B = make_bc_beta_gamma([("a", "even")])
    g, be = B.gen("gamma_a"), B.gen("beta_a")
    left = normal_product(normal_product(g, be), g)
    right = normal_product(g, normal_product(be, g))
    # [beta_lambda gamma] = 1 contributes :(d gamma) 1: = d gamma
    assert left - right == g.d()


def test_unknown_generator(susy_even):
    with pytest.raises(AlgebraError):
        susy_even.gen("psi")


def test_quotient_rule(n2_even):
    P = n2_even.gen("Phi_a")
    assert P.D(2) == P.D(1) * I
    assert n2_even.gen("Phibar_a").D(2) == n2_even.gen("Phibar_a").D(1) * I


MIXED = [("a", "even"), ("b", "odd")]
S1 = make_susy_charged_free_fermion(MIXED)
seeds = st.integers(0, 10**6)


@given(seeds)
def test_parity_bookkeeping(seed):
    rng = random.Random(seed)
    a = random_monomial(S1, rng, SampleConfig(max_length=2))
    b = random_monomial(S1, rng, SampleConfig(max_length=2))
    ab = nprod(a, b)
    if not ab.is_zero():
        assert ab.parity == (a.parity + b.parity) % 2
    if not a.D().is_zero():
        assert a.D().parity == 1 - a.parity
    if not a.d().is_zero():
        assert a.d().parity == a.parity


@given(seeds)
def test_d_squared_is_translation(seed):
    rng = random.Random(seed)
    a = random_monomial(S1, rng, SampleConfig(max_length=3))
    assert a.D().D() == a.d()


def test_sector_two_anticommutators(n2_mixed):
    rng = random.Random(7)
    for _ in range(25):
        a = random_monomial(n2_mixed, rng, SampleConfig(max_length=2, max_d=1))
        for i in (1, 2):
            assert a.D(i).D(i) == a.d()
        assert (a.D(2).D(1) + a.D(1).D(2)).is_zero()


@given(seeds)
def test_normalization_composes(seed):
    rng = random.Random(seed)
    tree = random_tree(S1, rng, rng.randint(2, 4), SampleConfig(max_length=1, max_d=1))
    v = normalize(tree, S1)
    assert normalize(Node("elem", value=v), S1) == v
    # replacing a subtree by its normal form gives the same element
    if tree.kind == "prod":
        left, right = tree.args
        pre = Node("prod", (Node("elem", value=normalize(left, S1)), right))
        assert normalize(pre, S1) == v

import random

from hypothesis import given
from hypothesis import strategies as st

from scvertex.elements import Node, _qa, normal_product, normalize
from scvertex.fields import (
    jacobi_holds,
    make_bc_beta_gamma,
    make_n2_bc_beta_gamma,
    make_susy_charged_free_fermion,
    skew_holds,
)
from scvertex.sampling import SampleConfig, random_dgen, random_monomial, random_tree

from conftest import MIXED

ALGEBRAS = {
    0: make_bc_beta_gamma(MIXED),
    1: make_susy_charged_free_fermion(MIXED),
    2: make_n2_bc_beta_gamma(MIXED),
}
CFG = SampleConfig(max_length=2, max_d=1)
seeds = st.integers(0, 10**6)
sectors = st.sampled_from([0, 1, 2])


def _element(alg, rng):
    return random_dgen(alg, rng, CFG) if rng.random() < 0.5 else random_monomial(alg, rng, CFG)


@given(sectors, seeds)
def test_skew_symmetry(n, seed):
    alg, rng = ALGEBRAS[n], random.Random(seed)
    assert skew_holds(_element(alg, rng), _element(alg, rng))


@given(sectors, seeds)
def test_jacobi(n, seed):
    alg, rng = ALGEBRAS[n], random.Random(seed)
    a, b, c = (_element(alg, rng) for _ in range(3))
    assert jacobi_holds(a, b, c)


@given(sectors, seeds)
def test_normalization_idempotent(n, seed):
    alg, rng = ALGEBRAS[n], random.Random(seed)
    tree = random_tree(alg, rng, rng.randint(2, 4), SampleConfig(max_length=1, max_d=1))
    v = normalize(tree, alg)
    assert normalize(Node("elem", value=v), alg) == v


def _substitute_first_product(tree, alg):
    if tree.kind == "prod":
        return Node("prod", tuple(Node("elem", value=normalize(x, alg)) for x in tree.args))
    if tree.kind in ("sum", "scale", "trans"):
        return Node(tree.kind, tuple(_substitute_first_product(x, alg) for x in tree.args), tree.value)
    return tree


@given(sectors, seeds)
def test_normalization_substitution(n, seed):
    alg, rng = ALGEBRAS[n], random.Random(seed)
    tree = random_tree(alg, rng, rng.randint(2, 4), SampleConfig(max_length=1, max_d=1))
    assert normalize(_substitute_first_product(tree, alg), alg) == normalize(tree, alg)


@given(sectors, seeds)
def test_translations_are_derivations(n, seed):
    alg, rng = ALGEBRAS[n], random.Random(seed)
    a, b = _element(alg, rng), _element(alg, rng)
    ab = normal_product(a, b)
    assert ab.d() == normal_product(a.d(), b) + normal_product(a, b.d())
    sign = -1 if a.parity else 1
    for i in range(1, n + 1):
        assert ab.D(i) == normal_product(a.D(i), b) + normal_product(a, b.D(i)) * sign


@given(seeds)
def test_quasi_associativity_sector_zero(seed):
    alg, rng = ALGEBRAS[0], random.Random(seed)
    a, b, c = (random_dgen(alg, rng, SampleConfig(max_d=2)) for _ in range(3))
    left = normal_product(normal_product(a, b), c)
    right = normal_product(a, normal_product(b, c))
    assert left - right == _qa(alg, a, b, c)

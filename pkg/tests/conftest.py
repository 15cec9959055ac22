import pytest
from hypothesis import HealthCheck, settings

from scvertex.coeff import Scalar
from scvertex.fields import (
    make_bc_beta_gamma,
    make_n2_bc_beta_gamma,
    make_susy_charged_free_fermion,
)

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

MIXED = [("a", "even"), ("b", "odd")]


@pytest.fixture(scope="module")
def susy_even():
    return make_susy_charged_free_fermion([("a", "even")])


@pytest.fixture(scope="module")
def susy_mixed():
    return make_susy_charged_free_fermion(MIXED)


@pytest.fixture(scope="module")
def bcbg_one():
    return make_bc_beta_gamma([("a", "even")])


@pytest.fixture(scope="module")
def n2_even():
    return make_n2_bc_beta_gamma([("a", "even")])


@pytest.fixture(scope="module")
def n2_mixed():
    return make_n2_bc_beta_gamma(MIXED)


def t(name="a"):
    return Scalar.param(f"t_{name}")

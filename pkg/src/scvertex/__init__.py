"""Exact lambda-bracket engine for vertex algebras and N_K=1, N_K=2 SUSY vertex algebras."""
from .bracket import apply_operator, bracket, mode_action, top_bracket
from .coeff import I, ONE, ZERO, GaussQ, Scalar
from .elements import Algebra, AlgebraError, Element, normal_product, nprod
from .fields import (
    build_vector,
    make_bc_beta_gamma,
    make_charged_free_fermion,
    make_custom,
    make_n2_bc_beta_gamma,
    make_osp_presentation,
    make_susy_charged_free_fermion,
)
from .render import render

__all__ = [
    "Algebra",
    "AlgebraError",
    "Element",
    "GaussQ",
    "I",
    "ONE",
    "Scalar",
    "ZERO",
    "apply_operator",
    "bracket",
    "build_vector",
    "make_bc_beta_gamma",
    "make_charged_free_fermion",
    "make_custom",
    "make_n2_bc_beta_gamma",
    "make_osp_presentation",
    "make_susy_charged_free_fermion",
    "mode_action",
    "normal_product",
    "nprod",
    "render",
    "top_bracket",
]

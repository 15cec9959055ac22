"""Known bracket tables for the free-field algebras, as frozen data.

Each entry is (label, left, right, expected) with expected built from
operator polynomials acting on elements.  All entries use one even basis
element ``a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bracket import apply_operator as act_on
from .coeff import I, Scalar
from .elements import Element, nprod
from .fields import make_n2_bc_beta_gamma, make_susy_charged_free_fermion
from .formal import VarPoly, chi, delop, dop, lam, one

HALF = Scalar.const(Fraction(1, 2))


@dataclass(frozen=True)
class Golden:
    label: str
    left: Element
    right: Element
    expected: VarPoly


def _n1_names():
    F = make_susy_charged_free_fermion([("a", "even")], name="F1golden")
    f, fb = F.gen("phi_a"), F.gen("phibar_a")
    return F, f, fb


def free_fermion_tables() -> dict[str, list[Golden]]:
    """The quadratic tables of the SUSY charged free fermions (one even a)."""
    F, f, fb = _n1_names()
    X = nprod(f.d(), fb)       # :d(phi) phibar:
    Y = nprod(f, fb.d())       # :phi d(phibar):
    Z = nprod(f.D(), fb.D())   # :D(phi) D(phibar):
    U = nprod(f.D(), fb)       # :D(phi) phibar:
    W = nprod(f, fb.D())       # :phi D(phibar):
    FF = nprod(f, fb)
    vac = F.vacuum()
    d, l, x, D, A = delop(), lam(), chi(), dop(), act_on
    dl = d + l
    xD = x * D
    top = (lam(2) * x).scale(HALF)

    quad_x = [
        Golden("dphi.phibar with phi", X, f, A(d, f)),
        Golden("dphi.phibar with phibar", X, fb, A(dl, fb)),
        Golden("dphi.phibar with D phi", X, f.D(), A((D + x) * d, f)),
        Golden("dphi.phibar with D phibar", X, fb.D(), A((D + x) * dl, fb)),
        Golden("dphi.phibar with d phi", X, f.d(), A(dl * d, f)),
        Golden("dphi.phibar with d phibar", X, fb.d(), A(dl * dl, fb)),
        # intermediate steps of the skew-symmetry argument
        Golden("phi with dphi.phibar", f, X, A(d, f)),
        Golden("phi with d phi", f, f.d(), VarPoly()),
    ]
    quad_y = [
        Golden("phi.dphibar with phi", Y, f, A(-dl, f)),
        Golden("phi.dphibar with phibar", Y, fb, A(-d, fb)),
        Golden("phi.dphibar with D phi", Y, f.D(), A(-((D + x) * dl), f)),
        Golden("phi.dphibar with D phibar", Y, fb.D(), A(-((D + x) * d), fb)),
        Golden("phi.dphibar with d phi", Y, f.d(), A(-(dl * dl), f)),
        Golden("phi.dphibar with d phibar", Y, fb.d(), A(-(dl * d), fb)),
    ]
    quad_z = [
        Golden("Dphi.Dphibar with phi", Z, f, A(d + xD, f)),
        Golden("Dphi.Dphibar with phibar", Z, fb, A(d + xD, fb)),
        Golden("Dphi.Dphibar with D phi", Z, f.D(), A(dl * D, f)),
        Golden("Dphi.Dphibar with D phibar", Z, fb.D(), A(dl * D, fb)),
        Golden("Dphi.Dphibar with d phi", Z, f.d(), A(dl * (d + xD), f)),
        Golden("Dphi.Dphibar with d phibar", Z, fb.d(), A(dl * (d + xD), fb)),
    ]
    quad_uw = [
        Golden("Dphi.phibar with phi", U, f, A(-D, f)),
        Golden("Dphi.phibar with phibar", U, fb, A(-(D + x), fb)),
        Golden("Dphi.phibar with D phi", U, f.D(), A(d + xD, f)),
        Golden("Dphi.phibar with D phibar", U, fb.D(), A(dl, fb)),
        Golden("phi.Dphibar with phi", W, f, A(D + x, f)),
        Golden("phi.Dphibar with phibar", W, fb, A(D, fb)),
        Golden("phi.Dphibar with D phi", W, f.D(), A(-dl, f)),
        Golden("phi.Dphibar with D phibar", W, fb.D(), A(-(d + xD), fb)),
    ]
    two = Scalar.const(2)
    shifted_blocks = [
        Golden("X X", X, X, A(d + l.scale(two), X)),
        Golden("X Y", X, Y, A(d + l.scale(two), Y) + A(lam(2), FF)),
        Golden("X Z", X, Z, A(dl + xD, Z) + A(top, vac) + A(-(l * x), U)),
        Golden("Y X", Y, X, A(-(d + l.scale(two)), X) + A(-lam(2), FF)),
        Golden("Y Y", Y, Y, A(-(d + l.scale(two)), Y)),
        Golden("Y Z", Y, Z, A(-(dl + xD), Z) + A(top, vac) + A(-(l * x), W)),
        Golden("Z X", Z, X, A(dl + xD, X) + A(top, vac) + A(l * x, U)),
        Golden("Z Y", Z, Y, A(dl + xD, Y) + A(top, vac) + A(l * x, W)),
        Golden("Z Z", Z, Z, A(d + l.scale(two), Z)),
    ]
    n2_blocks = [
        Golden("X U", X, U, A(dl + xD, U) + A(x, Z) + A(-lam(2).scale(HALF), vac)),
        Golden("X W", X, W, A(dl + xD, W) + A(-x, Z) + A(l * x, FF) + A(lam(2).scale(HALF), vac)),
        Golden("Y U", Y, U, A(-(dl + xD), U) + A(-x, Z) + A(-(l * x), FF) + A(-lam(2).scale(HALF), vac)),
        Golden("Y W", Y, W, A(-(dl + xD), W) + A(x, Z) + A(lam(2).scale(HALF), vac)),
        Golden("Z U", Z, U, A(dl, U) + A(-x, Z) + A(lam(2).scale(HALF), vac)),
        Golden("Z W", Z, W, A(dl, W) + A(x, Z) + A(lam(2).scale(HALF), vac)),
        Golden("U U", U, U, A(one(), X) + A(one(), Z) + A(l * x, vac)),
        Golden("U W", U, W, A(one(), Y) - A(one(), Z) + A(l, FF)),
        Golden("W U", W, U, A(-one(), X) - A(one(), Z) - A(l, FF)),
        Golden("W W", W, W, A(-one(), Y) + A(one(), Z) - A(l * x, vac)),
    ]
    return {
        "quadratic": quad_x + quad_y + quad_z + quad_uw,
        "shifted": shifted_blocks,
        "n2": n2_blocks,
    }


def n2_susy_table() -> list[Golden]:
    """Brackets in the N=2 SUSY bc-beta-gamma system, one even a."""
    N = make_n2_bc_beta_gamma([("a", "even")], name="N2golden")
    f, fb = N.gen("Phi_a"), N.gen("Phibar_a")
    X = nprod(f.D(1), fb)
    FF = nprod(f, fb)
    vac = N.vacuum()
    d, l, A = delop(), lam(), act_on
    x1, x2, D1, D2 = chi(1), chi(2), dop(1), dop(2)
    ic = Scalar.const(I.as_constant())
    cov1 = d.scale(Scalar.const(2)) + l + x1 * D1 + x2 * D2
    cov2 = d.scale(Scalar.const(2)) + l.scale(Scalar.const(2)) + x1 * D1 + x2 * D2
    x12 = x1 * x2
    return [
        Golden("Phi Phibar", f, fb, A(x1.scale(-ic) + x2, vac)),
        Golden("Phi X", f, X, A((x1 * D1).scale(ic) - x2 * D1, f)),
        Golden("X Phi", X, f, A((cov1 - l).scale(ic), f)),
        Golden("X D1Phi", X, f.D(1), A(cov1.scale(ic), f.D(1)) + A(-x12, f.D(1))),
        Golden("X Phibar", X, fb, A(cov1.scale(ic), fb) + A(x12, fb)),
        Golden("X X", X, X, A(cov2.scale(ic), X) + A(-(l * x12), vac)),
        Golden("FF FF", FF, FF, VarPoly()),
        Golden("X FF", X, FF, A(cov1.scale(ic), FF) + A(x12, FF) + A(-(l * (x1.scale(-ic) + x2)), vac)),
        Golden(
            "X D1FF", X, FF.D(1),
            A(cov2.scale(ic), FF.D(1)) + A((l * x1).scale(ic) + l * x2, FF)
            + A(-lam(2).scale(ic) - l * x12, vac),
        ),
        Golden(
            "D1FF X", FF.D(1), X,
            A(-((l * x1).scale(ic) + l * x2), FF) + A(lam(2).scale(ic) - l * x12, vac),
        ),
    ]

"""Charge grading, the BRST-type differential Q and its homotopy H.

Q = d_(0|1) with d = sum :D phi_a D phibar_a:, equal to (T_sh(0|1) - J_sh(0|0))/2.
H = (T_sh - d)_(0|1), equal to (T_sh(0|1) + J_sh(0|0))/2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .bracket import mode_action
from .coeff import ZERO, Scalar
from .elements import Algebra, AlgebraError, Element, nprod
from .fields import build_vector
from .render import element_text
from .verify import NotEigenvector, _scalar_ratio

HALF = Fraction(1, 2)


def _need_susy_cff(alg: Algebra) -> None:
    if alg.meta.get("kind") != "susy_cff":
        raise AlgebraError("charges and Q need a SUSY charged free fermion algebra")


@dataclass(frozen=True)
class ChargeReport:
    eigenvalue: Scalar | None
    is_eigenvector: bool
    image: Element


def charge_of(v: Element, params: Mapping | None = None, strict: bool = True) -> ChargeReport:
    """Eigenvalue of J_sh(0|1) on v."""
    alg = v.alg
    _need_susy_cff(alg)
    J = build_vector("J_sh", alg, params)
    img = mode_action(J, 0, "1", v)
    k = _scalar_ratio(img, v) if not v.is_zero() else None
    if k is None:
        if strict:
            raise NotEigenvector(f"{element_text(v)} is not a charge eigenvector",
                                 {"vector": element_text(v), "image": element_text(img)})
        return ChargeReport(None, False, img)
    return ChargeReport(k, True, img)


def brst_q(v: Element) -> Element:
    """Q v = d_(0|1) v."""
    _need_susy_cff(v.alg)
    return mode_action(build_vector("d", v.alg), 0, "1", v)


def brst_q_defining(v: Element, params: Mapping | None = None) -> Element:
    """Q v = (T_sh(0|1) v - J_sh(0|0) v) / 2."""
    alg = v.alg
    _need_susy_cff(alg)
    T = build_vector("T_sh", alg, params)
    J = build_vector("J_sh", alg, params)
    return (mode_action(T, 0, "1", v) - mode_action(J, 0, "0", v)) * HALF


def homotopy_h(v: Element, params: Mapping | None = None) -> Element:
    """H v = (T_sh - d)_(0|1) v."""
    alg = v.alg
    _need_susy_cff(alg)
    op = build_vector("T_sh", alg, params) - build_vector("d", alg)
    return mode_action(op, 0, "1", v)


def homotopy_h_defining(v: Element, params: Mapping | None = None) -> Element:
    """H v = (T_sh(0|1) v + J_sh(0|0) v) / 2."""
    alg = v.alg
    _need_susy_cff(alg)
    T = build_vector("T_sh", alg, params)
    J = build_vector("J_sh", alg, params)
    return (mode_action(T, 0, "1", v) + mode_action(J, 0, "0", v)) * HALF


@dataclass
class PoolReport:
    checked: int
    failures: list  # (vector, offending value)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_q_squared(vectors: Iterable[Element]) -> PoolReport:
    fails = []
    n = 0
    for v in vectors:
        n += 1
        r = brst_q(brst_q(v))
        if not r.is_zero():
            fails.append((v, r))
    return PoolReport(n, fails)


def check_h_squared(vectors: Iterable[Element], params: Mapping | None = None) -> PoolReport:
    fails = []
    n = 0
    for v in vectors:
        n += 1
        r = homotopy_h(homotopy_h(v, params), params)
        if not r.is_zero():
            fails.append((v, r))
    return PoolReport(n, fails)


def check_q_forms(vectors: Iterable[Element], params: Mapping | None = None) -> PoolReport:
    """Both descriptions of Q agree and Q carries no shift parameter."""
    fails = []
    n = 0
    for v in vectors:
        n += 1
        a = brst_q(v)
        b = brst_q_defining(v, params)
        if a != b or a.params() - v.params():
            fails.append((v, a - b))
    return PoolReport(n, fails)


def tower(g: Element, depth: int) -> list[Element]:
    """g, Dg, d g, D d g, ... : D applied up to ``depth`` times."""
    out = [g]
    cur = g
    for _ in range(depth):
        cur = cur.D()
        out.append(cur)
    return out


def charge_decomposition(vectors: Iterable[Element], params: Mapping | None = None) -> dict:
    """Bucket eigenvectors by charge; charges must be parameter free."""
    buckets: dict = {}
    for v in vectors:
        k = charge_of(v, params).eigenvalue
        if k.params():
            raise AlgebraError(f"charge {k} of {element_text(v)} is not numeric; specialize the t_a")
        buckets.setdefault(k, []).append(v)
    return buckets


@dataclass(frozen=True)
class ProductRuleReport:
    """Which candidate product rule matches the computed charge of :uv:."""

    u: Element
    v: Element
    charge_u: Scalar
    charge_v: Scalar
    charge_uv: Scalar | None
    additive: bool
    signed: bool


def product_rule(u: Element, v: Element, params: Mapping | None = None) -> ProductRuleReport:
    """Compare charge(:uv:) with m_u + m_v and with m_u + (-1)^p(u) m_v."""
    mu = charge_of(u, params).eigenvalue
    mv = charge_of(v, params).eigenvalue
    uv = nprod(u, v)
    r = charge_of(uv, params, strict=False)
    m = r.eigenvalue if r.is_eigenvector else None
    signed = mu + (-mv if (u.parity or 0) else mv)
    return ProductRuleReport(u, v, mu, mv, m, m == mu + mv, m == signed)

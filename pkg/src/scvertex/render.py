"""Text, LaTeX and JSON renderers for scalars, elements and bracket values."""
from __future__ import annotations

import json

from . import coeff, formal
from .coeff import Scalar, needs_parens
from .formal import DOP, VarPoly

SCHEMA_VERSION = 1

_GREEK = {"phi", "Phi", "beta", "gamma", "chi", "psi", "lambda", "eta", "theta"}


def dgen_text(alg, dg) -> str:
    name = alg.generators[dg[0]].name
    s = name
    n = alg.sector.n
    for bit in reversed(formal.bits(dg[2])):
        op = "D" if n == 1 else f"D{bit - 3}"
        s = f"{op}({s})"
    if dg[1] == 1:
        s = f"d({s})"
    elif dg[1] > 1:
        s = f"d^{dg[1]}({s})"
    return s


def mono_text(alg, m) -> str:
    if not m:
        return "|0>"
    if len(m) == 1:
        return dgen_text(alg, m[0])
    return ":" + " ".join(dgen_text(alg, dg) for dg in m) + ":"


def _term(coef: Scalar, body: str, unit: str) -> tuple:
    """Return (negative?, text) for coef*body."""
    cs = coeff.render_text(coef)
    if body == unit:
        neg = cs.startswith("-") and not needs_parens(coef)
        return (neg, cs[1:] if neg else cs)
    if cs == "1":
        return (False, body)
    if cs == "-1":
        return (True, body)
    if len(coef.terms) > 1:
        return (False, f"({cs})*{body}")
    if needs_parens(coef):
        return (False, f"{cs}*{body}")
    neg = cs.startswith("-")
    cs = cs[1:] if neg else cs
    if "/" in cs:
        cs = f"({cs})"
    return (neg, f"{cs}*{body}")


def _join(parts) -> str:
    if not parts:
        return "0"
    out = ("-" if parts[0][0] else "") + parts[0][1]
    for neg, body in parts[1:]:
        out += (" - " if neg else " + ") + body
    return out


def element_text(v) -> str:
    alg = v.alg
    parts = [_term(v.terms[m], mono_text(alg, m), "|0>") for m in sorted(v.terms, key=_mono_key)]
    return _join(parts)


def _mono_key(m):
    return (len(m), m)


def lambda_text(p: VarPoly, alg) -> str:
    """Render a bracket value as sum of word*(element)."""
    if p.is_zero():
        return "0"
    n = alg.sector.n
    parts = []
    for w in sorted(p.terms, key=formal.word_sort_key):
        el = p.terms[w]
        ws = formal.word_text(w, n)
        if len(el.terms) == 1:
            (m, c), = el.terms.items()
            body = mono_text(alg, m)
            if m == ():
                body = ws or "|0>"
                parts.append(_term(c, body, "|0>" if not ws else "\x00"))
            else:
                parts.append(_term(c, f"{ws}*{body}" if ws else body, "\x00"))
        else:
            inner = element_text(el)
            parts.append((False, f"{ws}*({inner})" if ws else f"({inner})"))
    return _join(parts)


# ---------------------------------------------------------------- LaTeX

def name_latex(name: str) -> str:
    if "_" not in name:
        return f"\\{name}" if name in _GREEK else name
    head, tail = name.split("_", 1)
    bar = head.endswith("bar")
    if bar:
        head = head[:-3]
    h = f"\\{head}" if head in _GREEK else head
    if bar:
        return f"{h}^{{\\bar {tail}}}"
    return f"{h}_{{{tail}}}"


def dgen_latex(alg, dg) -> str:
    s = name_latex(alg.generators[dg[0]].name)
    n = alg.sector.n
    ops = []
    if dg[1]:
        ops.append("\\partial" if dg[1] == 1 else f"\\partial^{{{dg[1]}}}")
    for bit in formal.bits(dg[2]):
        ops.append("D" if n == 1 else f"D^{{{bit - 3}}}")
    # spaces keep macro names from running into the next letter
    return " ".join(ops + [s])


def mono_latex(alg, m) -> str:
    if not m:
        return "|0\\rangle"
    return " ".join(dgen_latex(alg, dg) for dg in m)


def _lterm(coef: Scalar, body: str) -> tuple:
    cs = coeff.render_latex(coef)
    if body == "":
        neg = cs.startswith("-") and len(coef.terms) == 1
        return (neg, cs[1:] if neg else cs)
    if cs == "1":
        return (False, body)
    if cs == "-1":
        return (True, body)
    if len(coef.terms) > 1:
        return (False, f"({cs}){body}")
    neg = cs.startswith("-")
    return (neg, (cs[1:] if neg else cs) + body)


def element_latex(v) -> str:
    alg = v.alg
    parts = []
    for m in sorted(v.terms, key=_mono_key):
        body = mono_latex(alg, m) if m else ""
        parts.append(_lterm(v.terms[m], body))
    return _join(parts)


def lambda_latex(p: VarPoly, alg) -> str:
    if p.is_zero():
        return "0"
    n = alg.sector.n
    parts = []
    for w in sorted(p.terms, key=formal.word_sort_key):
        el = p.terms[w]
        ws = formal.word_latex(w, n)
        if len(el.terms) == 1:
            (m, c), = el.terms.items()
            body = (ws + " " + mono_latex(alg, m)).strip() if m else ws
            parts.append(_lterm(c, body))
        else:
            parts.append((False, f"{ws}({element_latex(el)})"))
    return _join(parts)


# ---------------------------------------------------------------- JSON

def dgen_json(alg, dg) -> dict:
    return {
        "gen": alg.generators[dg[0]].name,
        "d": dg[1],
        "D": [bit - 3 for bit in formal.bits(dg[2])],
    }


def element_json(v) -> dict:
    alg = v.alg
    return {
        "algebra": alg.name,
        "terms": [
            {"coeff": coeff.to_json(v.terms[m]), "factors": [dgen_json(alg, dg) for dg in m]}
            for m in sorted(v.terms, key=_mono_key)
        ],
    }


def element_from_json(alg, data: dict):
    from .elements import Element

    terms = {}
    for t in data["terms"]:
        m = tuple(
            (alg.by_name[f["gen"]].index, int(f["d"]), sum(1 << DOP[i] for i in f["D"]))
            for f in t["factors"]
        )
        terms[m] = coeff.from_json(t["coeff"])
    return Element(alg, terms)


def word_json(w) -> dict:
    return {
        "lambda": w[0],
        "chi": [i for i in (1, 2) if w[3] >> formal.CHI[i] & 1],
    }


def lambda_json(p: VarPoly, alg) -> dict:
    return {
        "algebra": alg.name,
        "terms": [
            {"word": word_json(w), "value": element_json(p.terms[w])}
            for w in sorted(p.terms, key=formal.word_sort_key)
        ],
    }


def lambda_from_json(alg, data: dict) -> VarPoly:
    out = {}
    for t in data["terms"]:
        mask = 0
        for i in t["word"]["chi"]:
            mask |= 1 << formal.CHI[i]
        out[(int(t["word"]["lambda"]), 0, 0, mask)] = element_from_json(alg, t["value"])
    return VarPoly(out)


def render(value, fmt: str = "text", alg=None) -> str:
    """Render a Scalar, Element or bracket value."""
    from .elements import Element

    if isinstance(value, Scalar):
        if fmt == "latex":
            return coeff.render_latex(value)
        if fmt == "json":
            return json.dumps({"scalar": coeff.to_json(value)}, sort_keys=True)
        return coeff.render_text(value)
    if isinstance(value, Element):
        if fmt == "latex":
            return element_latex(value)
        if fmt == "json":
            return json.dumps(element_json(value), sort_keys=True)
        return element_text(value)
    if isinstance(value, VarPoly):
        if alg is None:
            raise ValueError("rendering a bracket value needs its algebra")
        if fmt == "latex":
            return lambda_latex(value, alg)
        if fmt == "json":
            return json.dumps(lambda_json(value, alg), sort_keys=True)
        return lambda_text(value, alg)
    return str(value)

"""Static analysis and execution of parsed scripts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .. import brst, reduce, verify
from ..bracket import apply_operator, bracket
from ..coeff import I, Scalar
from ..elements import Algebra, AlgebraError, Element, nprod, translate_coeff
from ..fields import (
    CATALOG,
    algebra_from_json,
    build_vector,
    make_bc_beta_gamma,
    make_charged_free_fermion,
    make_n2_bc_beta_gamma,
    make_osp_presentation,
    make_susy_charged_free_fermion,
)
from ..formal import UNIT, VarPoly, act, chi, lam
from ..render import SCHEMA_VERSION, element_json, lambda_json, render
from . import parser as ast


class ScriptError(Exception):
    """Analysis-time error: unknown name, wrong sector, type misuse."""

    def __init__(self, message: str, span=None):
        where = f"line {span.line}, column {span.col}: " if span else ""
        super().__init__(where + message)
        self.span = span
        self.bare = message


class EngineError(Exception):
    """An engine failure while executing a command."""

    def __init__(self, index: int, command: str, message: str):
        super().__init__(f"command {index} ({command}): {message}")
        self.index = index
        self.command = command
        self.bare = message


@dataclass(frozen=True)
class Operator:
    """A polynomial in the bracket variables with scalar coefficients."""

    poly: VarPoly


@dataclass(frozen=True)
class LambdaValue:
    """A bracket value: polynomial in bracket variables with element coefficients."""

    poly: VarPoly
    alg: Algebra


@dataclass
class Result:
    index: int
    command: str
    status: str  # ok | fail
    text: str
    data: dict = field(default_factory=dict)
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"schema": SCHEMA_VERSION, "index": self.index, "command": self.command, "status": self.status}
        out.update(self.data)
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def as_lambda(v, alg: Algebra) -> VarPoly:
    """Coerce any evaluated value into a bracket value of ``alg``."""
    if isinstance(v, LambdaValue):
        return v.poly
    if isinstance(v, Element):
        return VarPoly({UNIT: v})
    if isinstance(v, Scalar):
        return VarPoly({UNIT: alg.vacuum() * v})
    if isinstance(v, Operator):
        return apply_operator(v.poly, alg.vacuum())
    raise TypeError(f"not a bracket value: {v!r}")


_MAKERS = {
    "susy_cff": make_susy_charged_free_fermion,
    "cff": make_charged_free_fermion,
    "n2_bcbg": make_n2_bc_beta_gamma,
}


def build_algebra(decl: ast.AlgebraDecl, base_dir: Path | None = None) -> Algebra:
    try:
        if decl.kind == "json":
            path = Path(decl.source)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            return algebra_from_json(path.read_text())
        if decl.kind == "osp":
            if decl.basis:
                raise ScriptError("osp takes no basis", decl.span)
            return make_osp_presentation()
        if decl.kind == "bcbg":
            return make_bc_beta_gamma(decl.basis, name=decl.name)
        if not decl.basis:
            raise ScriptError(f"{decl.kind} needs a basis such as {{ a: even }}", decl.span)
        return _MAKERS[decl.kind](decl.basis, name=decl.name)
    except (OSError, ValueError, KeyError) as e:
        raise ScriptError(f"cannot build algebra {decl.name}: {e}", decl.span) from e


# commands and the sectors they accept
_SECTORS = {
    "verify-virasoro": (0,),
    "verify-n1": (0,),
    "verify-sconf": (1,),
    "verify-nk2": (2,),
    "constraints": (1,),
    "charge": (1,),
    "brst": (1,),
    "homotopy": (1,),
    "components": (1, 2),
}


class Evaluator:
    """Holds the script state: algebras, parameters, shifts and bindings."""

    def __init__(self, fmt: str = "text", assignment: Mapping | None = None, base_dir: Path | None = None,
                 jobs: int = 1, seed: int = 0):
        self.fmt = fmt
        self.assignment = {k: Scalar.coerce(v) for k, v in (assignment or {}).items()}
        self.base_dir = base_dir
        self.jobs = jobs
        self.seed = seed
        self.algebras: dict[str, Algebra] = {}
        self.current: Algebra | None = None
        self.params: set[str] = set()
        self.shifts: dict[str, object] = {}
        self.bindings: dict[str, object] = {}

    # ---------------------------------------------------------- setup

    def add_algebra(self, name: str, alg: Algebra) -> None:
        self.algebras[name] = alg
        self.current = alg

    def _param(self, name: str) -> Scalar:
        if name in self.assignment:
            return self.assignment[name]
        return Scalar.param(name)

    def shift_params(self) -> dict:
        alg = self._need_alg(None)
        basis = alg.meta.get("basis") or []
        out = {}
        for a, _ in basis:
            if a in self.shifts:
                out[a] = self.shifts[a]
            else:
                out[a] = self._param(f"t_{a}")
        return out

    def _need_alg(self, span) -> Algebra:
        if self.current is None:
            raise ScriptError("no algebra in scope; declare one with 'algebra NAME = KIND ...;'", span)
        return self.current

    # ---------------------------------------------------------- analysis

    def analyze(self, script: ast.Script) -> None:
        """Resolve names and check sectors without running any command."""
        saved = (dict(self.algebras), self.current, set(self.params), dict(self.shifts), dict(self.bindings))
        try:
            for st in script.statements:
                self._analyze_stmt(st)
        finally:
            self.algebras, self.current, self.params, self.shifts, self.bindings = saved

    def _analyze_stmt(self, st) -> None:
        if isinstance(st, ast.AlgebraDecl):
            self.add_algebra(st.name, build_algebra(st, self.base_dir))
        elif isinstance(st, ast.UseStmt):
            self._use(st)
        elif isinstance(st, ast.ParamDecl):
            self.params.update(st.names)
        elif isinstance(st, ast.ShiftStmt):
            alg = self._need_alg(st.span)
            self._check_basis(alg, st.basis, st.span)
            self._check_expr(st.value, alg)
            self.shifts[st.basis] = None
        elif isinstance(st, ast.LetStmt):
            self._check_expr(st.value, self._need_alg(st.span))
            self.bindings[st.name] = None
        elif isinstance(st, ast.CommandStmt):
            if st.name == "suite":
                if st.args and st.args[0].id not in ("paper", "quick"):
                    raise ScriptError(f"unknown suite {st.args[0].id!r}; known: paper, quick", st.span)
                return
            alg = self._need_alg(st.span)
            allowed = _SECTORS.get(st.name)
            if allowed and alg.sector.n not in allowed:
                raise ScriptError(
                    f"{st.name} needs a sector {'/'.join(map(str, allowed))} algebra, "
                    f"{alg.name} is sector {alg.sector.n}", st.span)
            if st.name == "verify-n2" and alg.sector.n != (0 if len(st.args) == 4 else 1):
                raise ScriptError("verify-n2 takes L J G+ G- in sector 0 or T J in sector 1", st.span)
            if st.name == "verify-n2" and len(st.args) == 3:
                raise ScriptError("verify-n2 takes 2 or 4 arguments", st.span)
            for e in st.args + st.extra:
                self._check_expr(e, alg)

    def _use(self, st: ast.UseStmt) -> None:
        if st.name not in self.algebras:
            raise ScriptError(f"unknown algebra {st.name!r}", st.span)
        self.current = self.algebras[st.name]

    def _check_basis(self, alg, a, span) -> None:
        basis = alg.meta.get("basis")
        if basis is None or a not in {b for b, _ in basis}:
            raise ScriptError(f"{a!r} is not a basis label of {alg.name}", span)

    def _check_expr(self, e, alg: Algebra) -> None:
        n = alg.sector.n
        if isinstance(e, ast.Name):
            if not self._resolvable(e.id, alg):
                raise ScriptError(f"unknown identifier {e.id!r}", e.span)
        elif isinstance(e, ast.BVar):
            need = {"lambda": 0, "chi1": 1, "chi2": 2}[e.name]
            if need > n:
                raise ScriptError(f"{e.name} does not exist in a sector {n} algebra", e.span)
        elif isinstance(e, ast.Deriv):
            need = {"d": 0, "D1": 1, "D2": 2}[e.op]
            if need > n:
                raise ScriptError(f"{e.op} does not exist in a sector {n} algebra", e.span)
            self._check_expr(e.arg, alg)
        elif isinstance(e, ast.Catalog):
            if e.name not in CATALOG:
                raise ScriptError(f"unknown catalog vector {e.name!r}", e.span)
        elif isinstance(e, (ast.Neg, ast.Pow)):
            self._check_expr(e.arg if isinstance(e, ast.Neg) else e.base, alg)
        elif isinstance(e, (ast.BinOp, ast.BracketExpr)):
            self._check_expr(e.left, alg)
            self._check_expr(e.right, alg)
        elif isinstance(e, ast.Prod):
            for x in e.items:
                self._check_expr(x, alg)

    def _resolvable(self, name: str, alg: Algebra) -> bool:
        if name in self.bindings or name in alg.by_name or name in self.params:
            return True
        basis = alg.meta.get("basis") or []
        return name.startswith("t_") and name[2:] in {a for a, _ in basis}

    # ---------------------------------------------------------- evaluation

    def eval_expr(self, e):
        alg = self._need_alg(getattr(e, "span", None))
        if isinstance(e, ast.Num):
            return Scalar.const(e.value)
        if isinstance(e, ast.Imag):
            return I
        if isinstance(e, ast.Vacuum):
            return alg.vacuum()
        if isinstance(e, ast.Name):
            return self._lookup(e, alg)
        if isinstance(e, ast.BVar):
            return Operator(lam() if e.name == "lambda" else chi(int(e.name[-1])))
        if isinstance(e, ast.Catalog):
            try:
                return build_vector(e.name, alg, self.shift_params())
            except AlgebraError as err:
                raise ScriptError(str(err), e.span) from err
        if isinstance(e, ast.Neg):
            return self._mul(Scalar.const(-1), self.eval_expr(e.arg), e.span)
        if isinstance(e, ast.BinOp):
            a, b = self.eval_expr(e.left), self.eval_expr(e.right)
            if e.op == "+":
                return self._add(a, b, e.span)
            if e.op == "-":
                return self._add(a, self._mul(Scalar.const(-1), b, e.span), e.span)
            if e.op == "*":
                return self._mul(a, b, e.span)
            return self._div(a, b, e.span)
        if isinstance(e, ast.Pow):
            base = self.eval_expr(e.base)
            out = Scalar.const(1)
            for _ in range(e.exp):
                out = self._mul(out, base, e.span)
            return out
        if isinstance(e, ast.Prod):
            items = [self._element(self.eval_expr(x), x) for x in e.items]
            return nprod(*items)
        if isinstance(e, ast.Deriv):
            v = self._element(self.eval_expr(e.arg), e.arg)
            if e.op == "d":
                return v.d(e.power)
            return v.D(int(e.op[1]))
        if isinstance(e, ast.BracketExpr):
            a = self._element(self.eval_expr(e.left), e.left)
            b = self._element(self.eval_expr(e.right), e.right)
            return LambdaValue(bracket(a, b), alg)
        raise ScriptError(f"cannot evaluate {type(e).__name__}", getattr(e, "span", None))

    def _lookup(self, e: ast.Name, alg: Algebra):
        if e.id in self.bindings:
            v = self.bindings[e.id]
            if isinstance(v, (Element, LambdaValue)) and (v.alg is not alg):
                raise ScriptError(f"{e.id!r} belongs to another algebra", e.span)
            return v
        if e.id in alg.by_name:
            return alg.gen(e.id)
        if e.id in self.params or e.id.startswith("t_"):
            return self._param(e.id)
        raise ScriptError(f"unknown identifier {e.id!r}", e.span)

    def _element(self, v, node) -> Element:
        if isinstance(v, Element):
            return v
        if isinstance(v, Scalar):
            return self.current.vacuum() * v
        raise ScriptError("expected an element here", getattr(node, "span", None))

    def _add(self, a, b, span):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a + b
        if isinstance(a, Operator) and isinstance(b, (Operator, Scalar)) or isinstance(b, Operator) and isinstance(a, Scalar):
            return Operator(self._op(a) + self._op(b))
        if isinstance(a, (Element, Scalar)) and isinstance(b, (Element, Scalar)):
            return self._element(a, None) + self._element(b, None)
        alg = self.current
        return LambdaValue(as_lambda(a, alg) + as_lambda(b, alg), alg)

    @staticmethod
    def _op(v) -> VarPoly:
        return v.poly if isinstance(v, Operator) else VarPoly.scalar(v)

    def _mul(self, a, b, span):
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, Scalar) and isinstance(b, Element):
            return b * a
        if isinstance(a, Element) and isinstance(b, Scalar):
            return a * b
        if isinstance(a, (Scalar, Operator)) and isinstance(b, (Scalar, Operator)):
            return Operator(self._op(a) * self._op(b))
        if isinstance(a, Scalar) and isinstance(b, LambdaValue):
            return LambdaValue(b.poly.scale(a), b.alg)
        if isinstance(a, LambdaValue) and isinstance(b, Scalar):
            return LambdaValue(a.poly.scale(b), a.alg)
        if isinstance(a, Operator) and isinstance(b, Element):
            return LambdaValue(apply_operator(a.poly, b), b.alg)
        if isinstance(a, Operator) and isinstance(b, LambdaValue):
            return LambdaValue(act(a.poly, b.poly, translate_coeff), b.alg)
        if isinstance(a, Element) and isinstance(b, Element):
            raise ScriptError("use :x y: for the normal product of two elements", span)
        raise ScriptError("bracket variables multiply from the left", span)

    def _div(self, a, b, span):
        if not isinstance(b, Scalar):
            raise ScriptError("only division by a scalar is supported", span)
        k = b.as_constant()
        if k is None or k == 0:
            raise ScriptError("division needs a nonzero numeric divisor", span)
        return self._mul(a, Scalar.const(k.inverse()), span)

    # ---------------------------------------------------------- statements

    def run(self, script: ast.Script) -> list[Result]:
        self.analyze(script)
        results = []
        index = 0
        for st in script.statements:
            if isinstance(st, ast.AlgebraDecl):
                self.add_algebra(st.name, build_algebra(st, self.base_dir))
            elif isinstance(st, ast.UseStmt):
                self._use(st)
            elif isinstance(st, ast.ParamDecl):
                self.params.update(st.names)
            elif isinstance(st, ast.ShiftStmt):
                v = self.eval_expr(st.value)
                if not isinstance(v, Scalar):
                    raise ScriptError("a shift must be a scalar", st.span)
                self.shifts[st.basis] = v
            elif isinstance(st, ast.LetStmt):
                self.bindings[st.name] = self.eval_expr(st.value)
            else:
                results.append(self.command(st, index))
                index += 1
        return results

    def _eval_args(self, st):
        return [self.eval_expr(e) for e in st.args]

    def _elements(self, st, vals):
        return [self._element(v, e) for v, e in zip(vals, st.args)]

    def _specialize(self, v):
        """Apply the --set assignment."""
        if not self.assignment:
            return v
        if isinstance(v, (Scalar, Element)):
            return v.eval(self.assignment)
        if isinstance(v, LambdaValue):
            return LambdaValue(v.poly.map_coeffs(lambda x: x.eval(self.assignment)), v.alg)
        return v

    def _render(self, v, fmt: str | None = None) -> str:
        fmt = fmt or self.fmt
        v = self._specialize(v)
        if isinstance(v, (Scalar, Element)):
            return render(v, fmt)
        if isinstance(v, LambdaValue):
            return render(v.poly, fmt, v.alg)
        if isinstance(v, Operator):
            return render(apply_operator(v.poly, self.current.vacuum()), fmt, self.current)
        return str(v)

    def _value_json(self, v) -> dict:
        v = self._specialize(v)
        if isinstance(v, Scalar):
            return {"scalar": str(v)}
        if isinstance(v, Element):
            return {"element": element_json(v)}
        if isinstance(v, LambdaValue):
            return {"lambda": lambda_json(v.poly, v.alg)}
        return {"text": self._render(v)}

    def _value_result(self, index, st, v) -> Result:
        text = self._render(v, "text")
        shown = text if self.fmt == "text" else self._render(v)
        return Result(index, st.name, "ok", shown, {"value": self._value_json(v), "text": text})

    def command(self, st: ast.CommandStmt, index: int) -> Result:
        try:
            return self._command(st, index)
        except verify.VerificationError as e:
            r = e.result()
            return Result(index, st.name, "fail", f"FAIL: {e}", {"check": r.check}, r.witness)
        except (AlgebraError, ValueError, ZeroDivisionError) as e:
            raise EngineError(index, st.name, str(e)) from e

    def _check(self, index, st, name, fn, *args) -> Result:
        r = verify.run_check(name, fn, *args)
        if r.status == "ok":
            cc = r.central_charge
            if cc is not None and self.assignment:
                cc = cc.eval(self.assignment)
            txt = "ok" if cc is None else f"ok, central charge {render(cc, self.fmt)}"
            return Result(index, st.name, "ok", txt, {"check": name, "central_charge": None if cc is None else str(cc)})
        return Result(index, st.name, "fail", f"FAIL: {r.message}", {"check": name}, r.witness)

    def _command(self, st: ast.CommandStmt, index: int) -> Result:
        name = st.name
        if name == "suite":
            return self._suite(st, index)
        vals = self._eval_args(st)
        if name == "bracket":
            a, b = self._elements(st, vals)
            return self._value_result(index, st, LambdaValue(bracket(a, b), a.alg))
        if name == "normalize":
            return self._value_result(index, st, vals[0])
        if name == "weight":
            T, v = self._elements(st, vals)
            rep = verify.conformal_weight(T, v)
            txt = f"weight {render(rep.delta, self.fmt)}, " + ("primary" if rep.primary else "not primary")
            return Result(index, name, "ok", txt, rep.to_json(T.alg))
        if name == "charge":
            (v,) = self._elements(st, vals)
            rep = brst.charge_of(v, self.shift_params())
            return self._value_result(index, st, rep.eigenvalue)
        if name == "brst":
            (v,) = self._elements(st, vals)
            return self._value_result(index, st, brst.brst_q(v))
        if name == "homotopy":
            (v,) = self._elements(st, vals)
            return self._value_result(index, st, brst.homotopy_h(v, self.shift_params()))
        if name == "components":
            (v,) = self._elements(st, vals)
            return self._components(index, st, v)
        els = lambda: self._elements(st, vals)  # noqa: E731
        if name == "verify-virasoro":
            return self._check(index, st, "virasoro", verify.check_virasoro, *els())
        if name == "verify-n1":
            return self._check(index, st, "n1", verify.check_n1_pair, *els())
        if name == "verify-n2":
            xs = els()
            fn = verify.check_n2_component if len(xs) == 4 else verify.check_n2_susy_pair
            return self._check(index, st, "n2", fn, *xs)
        if name == "verify-sconf":
            cfg = verify.ModeCheckConfig(seed=self.seed)
            return self._check(index, st, "superconformal", verify.check_susy_superconformal, *els(), cfg)
        if name == "verify-nk2":
            cfg = verify.ModeCheckConfig(seed=self.seed)
            return self._check(index, st, "nk2_superconformal", verify.check_nk2_superconformal, *els(), cfg)
        if name == "constraints":
            return self._constraints(index, st, els())
        raise ScriptError(f"unknown command {name}", st.span)

    def _components(self, index, st, v: Element) -> Result:
        alg = v.alg
        if alg.sector.n == 1:
            cmap = reduce.component_map_nk1(alg)
            body, theta = reduce.components_nk1(v, cmap)
        else:
            cmap = reduce.component_map_nk2(alg)
            body, theta = reduce.components_nk2(v, cmap)
        body, theta = self._specialize(body), self._specialize(theta)
        shown = f"body: {self._render(body)}\ntheta: {self._render(theta)}"
        return Result(index, st.name, "ok", shown, {
            "body": element_json(body), "theta": element_json(theta),
            "text": f"body: {self._render(body, 'text')}\ntheta: {self._render(theta, 'text')}",
        })

    def _constraints(self, index, st, monos) -> Result:
        system = verify.ansatz_constraints(monos)
        if not st.extra:
            lines = [system.text(e) for e in system.equations]
            return Result(index, st.name, "ok", "\n".join(lines), {
                "unknowns": list(system.unknowns),
                "equations": [system.witness(e) for e in system.equations],
            })
        values = []
        for e in st.extra:
            v = self.eval_expr(e)
            if not isinstance(v, Scalar):
                raise ScriptError("solve values must be scalars", e.span)
            values.append(v)
        if len(values) != len(system.unknowns):
            raise ScriptError(f"solve needs {len(system.unknowns)} values, got {len(values)}", st.span)
        c, rest = system.solve_central(values)
        data = {"central_charge": None if c is None else str(c), "residual": [system.witness(e) for e in rest]}
        if c is not None and not rest:
            return Result(index, st.name, "ok", f"ok, central charge {render(c, self.fmt)}", data)
        msg = "no central charge solves the vacuum equation" if c is None else f"residual equations remain with c = {c}"
        lines = [f"FAIL: {msg}"] + [system.text(e) for e in rest]
        return Result(index, st.name, "fail", "\n".join(lines), data, rest and system.witness(rest[0]) or {})

    def _suite(self, st, index) -> Result:
        from ..suite import run_suite

        which = st.args[0].id if st.args else "paper"
        outcomes = run_suite(which, jobs=self.jobs, seed=self.seed)
        failed = [o for o in outcomes if not o.ok]
        lines = [o.line() for o in outcomes]
        data = {"checks": [o.to_json() for o in outcomes]}
        if failed:
            return Result(index, "suite", "fail", "\n".join(lines), data, failed[0].witness)
        return Result(index, "suite", "ok", "\n".join(lines), data)


def evaluate(script: ast.Script, **kw) -> list[Result]:
    return Evaluator(**kw).run(script)


def run_text(text: str, **kw) -> list[Result]:
    return evaluate(ast.parse(text), **kw)


def results_json(results: list[Result]) -> str:
    return json.dumps([r.to_json() for r in results], sort_keys=True)

"""Command-line front end.

Usage::

    gennum run MANIFEST [--kmax N] [--tail T] [--mcap M] [--seed S] [--json PATH] [--timing]
    gennum demo NAME [--json PATH]
    gennum --demo NAME

Manifest lines (``#`` starts a comment)::

    grid kmax=32 tail=16 mcap=40
    let NAME = EXPR
    vec NAME = [EXPR, ...]
    mat NAME = [[EXPR, ...], ...]
    box NAME = [[LO, HI], ...]
    metric NAME = [[EXPR, ...], ...] on BOX       (EXPR may use x1..xn)
    vfield NAME = [EXPR, ...] on BOX
    sfield NAME = EXPR on BOX
    point NAME = [EXPR, ...]                      (EXPR in eps)
    points NAME = default(BOX[, COUNT])  |  points NAME = [P1, P2, ...]
    task OP(ARG, ...)

Exit status: 0 when no task errored, 1 when some task raised an error,
2 when the manifest itself could not be loaded.
"""

import argparse
import os
import re
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from . import causal, charts, gen_linalg, gen_num, oracle
from .demos import DEMOS, run_demo
from .errors import GenNumError, NotLorentzian, ParseError, TypeMismatch, UnknownDemo, UnknownName
from .expr import Name, Num, Neg, Parser, parse, to_field, to_gen, uses_coords
from .gen_linalg import GenMatrix, GenVector
from .gen_num import NEGLIGIBLE, EpsGrid, GenNumber, default_grid
from .report import SCHEMA, dumps, grid_to_json, to_json

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_KEYWORDS = ("grid", "let", "vec", "mat", "box", "metric", "vfield", "sfield", "point", "points", "task")


@dataclass
class Task:
    op: str
    args: List[str]
    line: int


@dataclass
class Manifest:
    """Parsed manifest: grid parameters, named objects and tasks."""

    grid: EpsGrid
    objects: Dict[str, Any] = field(default_factory=dict)
    tasks: List[Task] = field(default_factory=list)


# ------------------------------------------------------------ manifest parsing


def _split_def(body: str, lineno: int, col0: int) -> Tuple[str, str, int]:
    m = re.match(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*=\s*", body)
    if not m:
        raise ParseError("expected 'NAME = ...'", lineno, col0)
    return m.group(1), body[m.end():], col0 + m.end()


def _split_on(rhs: str, lineno: int, col: int) -> Tuple[str, str]:
    m = re.search(r"\s+on\s+([A-Za-z_][A-Za-z_0-9]*)\s*$", rhs)
    if not m:
        raise ParseError("expected '... on BOX'", lineno, col + len(rhs))
    return rhs[: m.start()], m.group(1)


def _grid_line(body: str, lineno: int, base: dict):
    for item in body.split():
        m = re.fullmatch(r"(kmax|tail|mcap)=(\d+)", item)
        if not m:
            raise ParseError(f"bad grid parameter {item!r}", lineno)
        base[m.group(1)] = int(m.group(2))


def _num_literal(node) -> float:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg) and isinstance(node.arg, Num):
        return -node.arg.value
    raise TypeMismatch("box bounds must be numeric literals")


def _check_kmax(k: int):
    if not 8 <= k <= 64:
        raise ParseError(f"k_max must lie in 8..64, got {k}")


def load_manifest(text: str, kmax=None, tail=None, mcap=None, seed: int = 0) -> Manifest:
    """Parse manifest text and evaluate its definitions.

    Command-line grid values override ``grid`` lines.  Raises
    :class:`ParseError`, :class:`UnknownName`, :class:`TypeMismatch` or
    :class:`DivisionByNonInvertible` for an invalid manifest.
    """
    lines = text.splitlines()
    params = {}
    for i, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].strip()
        if s.startswith("grid ") or s == "grid":
            _grid_line(s[4:], i, params)
    if kmax is not None:
        params["kmax"] = kmax
    if tail is not None:
        params["tail"] = tail
    if mcap is not None:
        params["mcap"] = mcap
    if "kmax" in params:
        _check_kmax(params["kmax"])
        grid = EpsGrid(params["kmax"], params.get("tail"), params.get("mcap", gen_num.DEFAULT_MCAP))
    else:
        g0 = default_grid()
        grid = EpsGrid(g0.k_max, params.get("tail"), params.get("mcap", gen_num.DEFAULT_MCAP))
    man = Manifest(grid)
    env = man.objects

    def define(name, value, lineno):
        if name in env:
            raise ParseError(f"name {name!r} defined twice", lineno)
        env[name] = value

    def nets(node, lineno):
        scal = {k: v for k, v in env.items() if isinstance(v, GenNumber)}
        _check_names(node, env, lineno)
        return to_gen(node, grid, scal, lineno)

    for lineno, raw in enumerate(lines, 1):
        s = raw.split("#", 1)[0].rstrip()
        if not s.strip():
            continue
        indent = len(s) - len(s.lstrip())
        s = s.strip()
        kw = s.split(None, 1)[0]
        if kw not in _KEYWORDS:
            raise ParseError(f"unknown statement {kw!r}", lineno, indent + 1)
        body = s[len(kw):]
        col0 = indent + len(kw) + 1
        if kw == "grid":
            continue
        if kw == "task":
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*\((.*)\)\s*", body)
            if not m:
                raise ParseError("expected 'task OP(ARG, ...)'", lineno, col0)
            args = [a.strip() for a in m.group(2).split(",") if a.strip()]
            for a in args:
                if not (_NAME.match(a) or re.fullmatch(r"-?\d+", a)):
                    raise ParseError(f"bad task argument {a!r}", lineno, col0 + body.find(a))
            man.tasks.append(Task(m.group(1), args, lineno))
            continue
        name, rhs, rcol = _split_def(body, lineno, col0)
        if kw in ("metric", "vfield", "sfield"):
            rhs, box = _split_on(rhs, lineno, rcol)
            if box not in env or not isinstance(env[box], charts.ChartDomain):
                raise UnknownName(f"unknown box {box!r} (line {lineno})")
            dom = env[box]
            node = parse(rhs, lineno, rcol)
            _check_names(node, env, lineno)
            scal = {k: v for k, v in env.items() if isinstance(v, GenNumber)}
            define(name, _field(kw, node, dom, grid, scal, lineno), lineno)
            continue
        if kw == "points":
            define(name, _points(rhs, env, grid, seed, lineno, rcol), lineno)
            continue
        node = parse(rhs, lineno, rcol)
        if kw == "let":
            if isinstance(node, list):
                raise TypeMismatch(f"line {lineno}: 'let' expects a scalar expression")
            if uses_coords(node):
                raise TypeMismatch(f"line {lineno}: coordinates are only allowed in fields")
            x = nets(node, lineno)
            x.label = rhs.strip()
            define(name, x, lineno)
        elif kw == "vec":
            if not isinstance(node, list) or any(isinstance(e, list) for e in node):
                raise TypeMismatch(f"line {lineno}: 'vec' expects [expr, ...]")
            define(name, GenVector.from_entries([nets(e, lineno) for e in node], grid), lineno)
        elif kw == "mat":
            if not isinstance(node, list) or not all(isinstance(r, list) for r in node):
                raise TypeMismatch(f"line {lineno}: 'mat' expects [[expr, ...], ...]")
            define(name, GenMatrix.from_entries([[nets(e, lineno) for e in r] for r in node], grid), lineno)
        elif kw == "box":
            if not isinstance(node, list) or not all(isinstance(r, list) and len(r) == 2 for r in node):
                raise TypeMismatch(f"line {lineno}: 'box' expects [[lo, hi], ...]")
            lo = [_num_literal(r[0]) for r in node]
            hi = [_num_literal(r[1]) for r in node]
            define(name, charts.ChartDomain(tuple(lo), tuple(hi), name), lineno)
        elif kw == "point":
            if not isinstance(node, list):
                raise TypeMismatch(f"line {lineno}: 'point' expects [expr, ...]")
            _check_names(node, env, lineno)
            scal = {k: v for k, v in env.items() if isinstance(v, GenNumber)}
            fs = [to_field(e, grid, scal) for e in node]
            define(name, charts.GenPoint(lambda e, fs=fs: np.array([f(e, None) for f in fs]), grid, name), lineno)
    for t in man.tasks:
        for a in t.args:
            if _NAME.match(a) and a not in env:
                raise UnknownName(f"line {t.line}: task {t.op} references unknown name {a!r}")
    return man


def _check_names(node, env, lineno):
    if isinstance(node, list):
        for x in node:
            _check_names(x, env, lineno)
        return
    if isinstance(node, Name):
        if node.name not in env:
            raise UnknownName(f"unknown name {node.name!r} (line {lineno}, col {node.col})")
        return
    for attr in ("arg", "left", "right", "base"):
        sub = getattr(node, attr, None)
        if sub is not None:
            _check_names(sub, env, lineno)


def _field(kw, node, dom, grid, scal, lineno):
    n = dom.n
    if kw == "sfield":
        if isinstance(node, list):
            raise TypeMismatch(f"line {lineno}: 'sfield' expects a scalar expression")
        f = to_field(node, grid, scal)
        return charts.ScalarField(f, dom)
    if kw == "vfield":
        if not isinstance(node, list) or len(node) != n:
            raise TypeMismatch(f"line {lineno}: 'vfield' expects {n} components")
        fs = [to_field(e, grid, scal) for e in node]
        return charts.VectorField(lambda e, x, fs=fs: np.array([f(e, x) for f in fs]), dom)
    if not isinstance(node, list) or len(node) != n or not all(isinstance(r, list) and len(r) == n for r in node):
        raise TypeMismatch(f"line {lineno}: 'metric' expects an {n}x{n} matrix")
    fs = [[to_field(e, grid, scal) for e in r] for r in node]
    return charts.MetricField(lambda e, x, fs=fs: np.array([[f(e, x) for f in r] for r in fs]), dom)


def _points(rhs, env, grid, seed, lineno, col):
    m = re.fullmatch(r"\s*default\(\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:,\s*(\d+)\s*)?\)\s*", rhs)
    if m:
        box = m.group(1)
        if box not in env or not isinstance(env[box], charts.ChartDomain):
            raise UnknownName(f"unknown box {box!r} (line {lineno})")
        count = int(m.group(2) or 32)
        return charts.default_points(env[box], grid, count, seed)
    m = re.fullmatch(r"\s*\[(.*)\]\s*", rhs)
    if not m:
        raise ParseError("expected default(BOX[, COUNT]) or [P1, ...]", lineno, col)
    names = [a.strip() for a in m.group(1).split(",") if a.strip()]
    out = []
    for a in names:
        if a not in env:
            raise UnknownName(f"unknown point {a!r} (line {lineno})")
        if not isinstance(env[a], charts.GenPoint):
            raise TypeMismatch(f"{a!r} is not a point (line {lineno})")
        out.append(env[a])
    return out


# ------------------------------------------------------------ tasks

NET, VEC, MAT, FORM, INT, BOX, MFIELD, VFIELD, SFIELD, PTS = (
    "net", "vector", "matrix", "form", "int", "box", "metric", "vfield", "sfield", "points"
)


def _lorentz(a: GenMatrix) -> causal.BilinearForm:
    f = causal.BilinearForm.from_matrix(a)
    if not f.is_lorentzian:
        raise TypeMismatch(f"form is not Lorentzian (index {f.index_certificate.nu_minus})")
    return f


def _order(x):
    fit = gen_num.fit_order(x)
    return {
        "order": "NEGLIGIBLE" if fit.order is NEGLIGIBLE else fit.order,
        "slope": fit.slope,
        "low_confidence": fit.low_confidence,
    }


def _eigen(a):
    r = gen_linalg.gen_eigen(a)
    return {"eigenvalues": r.eigenvalues, "residual_negligible": gen_num.is_negligible(r.residual),
            "orthogonality_negligible": r.orthogonality_defect().is_negligible()}


def _det(a):
    d = gen_linalg.det(a)
    return {"det": d, "nondegenerate": gen_num.is_invertible(d)}


def _cs(g, u, v):
    r = causal.inverse_cauchy_schwarz(_lorentz(g), u, v)
    return {**r.to_dict(), "lhs": r.lhs, "rhs": r.rhs, "gap": r.gap}


def _boost(g, xi, eta):
    f = _lorentz(g)
    L = causal.lorentz_boost(f, xi, eta)
    d1, d2 = causal.boost_defects(f, L, xi, eta)
    return {"L": L, "isometry_defect_negligible": d1.is_negligible(), "image_defect_negligible": d2.is_negligible()}


def _metrconstr(g, u, v):
    h = causal.metrconstr(_lorentz(g), u, v)
    return {"h": h, "positive_definite": gen_linalg.principal_minor_test(h)}


def _complement(g, u):
    f = _lorentz(g)
    xs = causal.orthogonal_complement_basis(f, u)
    gm = causal.gram(f, xs)
    return {"basis": xs, "gram": gm, "gram_positive_definite": gen_linalg.principal_minor_test(gm),
            "determinant_identity_negligible": gen_num.is_negligible(causal.complement_determinant_gap(f, u))}


def _decompose(g, u, v):
    a, w = causal.decompose(_lorentz(g), u, v)
    return {"a": a, "w": w}


def _energy(g, theta, xi, eta):
    f = _lorentz(g)
    E = causal.energy_tensor(f, theta)
    flux = causal.flux_vector(E, xi)
    return {
        "E": E.E,
        "dominant_energy": causal.dominant_energy_check(E, xi, eta),
        "flux": flux,
        "flux_class": causal.classify(f, flux),
        "identity_negligible": gen_num.is_negligible(causal.energy_identity_gap(E, xi)),
    }


def _project(h, v, *basis):
    p = gen_linalg.orthogonal_project(list(basis), h, v)
    return {"projection": p}


def _steinitz(w, j):
    basis = [GenVector.basis(i, w.n, w.grid) for i in range(w.n)]
    out = gen_linalg.steinitz_exchange(basis, w, j)
    return {"basis": out, "is_basis": gen_linalg.is_basis(out)}


def _extend(v):
    b = gen_linalg.extend_to_basis(v)
    return {"basis": b, "is_basis": gen_linalg.is_basis(b)}


def _values_at(sf, pts):
    res = {}
    for p in pts:
        res[p.label] = gen_num.is_negligible(charts.eval_scalar(sf, p))
    return {"negligible_at": res}


def _riem(gf, xf, ef, pts):
    h, r = charts.riemannian_from_timelike(gf, xf, ef, pts)
    return r


def _slice_eigen(a):
    reps = oracle.slice_eigen_oracle(a, pipeline=gen_linalg.gen_eigen(a))
    return {"max_delta": max(r.delta for r in reps), "slices": [{"k": r.k, "eigenvalues": r.value, "delta": r.delta} for r in reps]}


def _slice_causal(g, u):
    reps = oracle.slice_causality_oracle(g, u)
    return {"expected": oracle.expected_causal_kind(reps, g.grid.tail_start),
            "slices": [{"k": r.k, "label": r.value} for r in reps]}


def _free_oracle(v):
    s = oracle.freeness_oracle(v)
    return {"free": s.free, "exponent": s.exponent, "agrees": s.free == gen_linalg.is_free(v).holds}


OPS: Dict[str, Tuple[Tuple[str, ...], Callable]] = {
    "is_negligible": ((NET,), gen_num.is_negligible),
    "is_invertible": ((NET,), gen_num.is_invertible),
    "is_strictly_nonzero": ((NET,), gen_num.is_strictly_nonzero),
    "is_strictly_positive": ((NET,), gen_num.is_strictly_positive),
    "is_strictly_negative": ((NET,), gen_num.is_strictly_negative),
    "estimate_order": ((NET,), _order),
    "leq": ((NET, NET), gen_num.leq),
    "equals": ((NET, NET), gen_num.equals),
    "symmetrize": ((MAT,), gen_linalg.symmetrize),
    "eigen": ((MAT,), _eigen),
    "det": ((MAT,), _det),
    "is_nondegenerate": ((MAT,), gen_linalg.is_nondegenerate),
    "matrix_index": ((MAT,), gen_linalg.matrix_index),
    "principal_minor_test": ((MAT,), gen_linalg.principal_minor_test),
    "is_free": ((VEC,), gen_linalg.is_free),
    "is_free_max": ((VEC,), gen_linalg.is_free_max),
    "extend_to_basis": ((VEC,), _extend),
    "steinitz_exchange": ((VEC, INT), _steinitz),
    "orthogonal_project": ((MAT, VEC, "*" + VEC), _project),
    "classify": ((FORM, VEC), lambda g, u: causal.classify(_lorentz(g), u)),
    "same_orientation": ((FORM, VEC, VEC), lambda g, u, v: causal.same_orientation(_lorentz(g), u, v)),
    "decompose": ((FORM, VEC, VEC), _decompose),
    "inverse_cauchy_schwarz": ((FORM, VEC, VEC), _cs),
    "orthogonal_complement": ((FORM, VEC), _complement),
    "lorentz_boost": ((FORM, VEC, VEC), _boost),
    "metrconstr": ((FORM, VEC, VEC), _metrconstr),
    "energy": ((FORM, VEC, VEC, VEC), _energy),
    "metric_index_at_points": ((MFIELD, PTS), charts.metric_index_at_points),
    "classify_field": ((MFIELD, VFIELD, PTS), charts.classify_field),
    "riemannian_from_timelike": ((MFIELD, VFIELD, VFIELD, PTS), _riem),
    "values_at_points": ((SFIELD, PTS), _values_at),
    "slice_eigen_oracle": ((MAT,), _slice_eigen),
    "slice_causality_oracle": ((MAT, VEC), _slice_causal),
    "freeness_oracle": ((VEC,), _free_oracle),
}

_KIND_TYPES = {
    NET: GenNumber,
    VEC: GenVector,
    MAT: GenMatrix,
    FORM: GenMatrix,
    MFIELD: charts.MetricField,
    VFIELD: charts.VectorField,
    SFIELD: charts.ScalarField,
    BOX: charts.ChartDomain,
}


def _resolve(task: Task, env: Dict[str, Any]) -> Tuple[Callable, list]:
    if task.op not in OPS:
        raise UnknownName(f"unknown operation {task.op!r}")
    kinds, fn = OPS[task.op]
    variadic = kinds and kinds[-1].startswith("*")
    fixed = kinds[:-1] if variadic else kinds
    if len(task.args) < len(fixed) or (not variadic and len(task.args) != len(fixed)):
        raise TypeMismatch(f"{task.op} expects {len(fixed)}{'+' if variadic else ''} arguments, got {len(task.args)}")
    vals = []
    for i, a in enumerate(task.args):
        kind = fixed[i] if i < len(fixed) else kinds[-1][1:]
        if kind == INT:
            if not re.fullmatch(r"-?\d+", a):
                raise TypeMismatch(f"argument {i + 1} of {task.op} must be an integer")
            vals.append(int(a))
            continue
        if a not in env:
            raise UnknownName(f"unknown name {a!r}")
        v = env[a]
        if kind == PTS:
            if isinstance(v, charts.GenPoint):
                v = [v]
            if not isinstance(v, list):
                raise TypeMismatch(f"argument {a!r} of {task.op} must be points")
        elif kind == NET and isinstance(v, (int, float)):
            pass
        elif not isinstance(v, _KIND_TYPES[kind]):
            raise TypeMismatch(f"argument {a!r} of {task.op} must be a {kind}, got {type(v).__name__}")
        vals.append(v)
    return fn, vals


def _summary(result) -> str:
    if isinstance(result, gen_num.Verdict):
        return str(result)
    if isinstance(result, causal.CausalClass):
        return result.kind.value
    if isinstance(result, gen_linalg.MatrixIndex):
        return f"nu_plus={result.nu_plus} nu_minus={result.nu_minus} {result.verdict}"
    if isinstance(result, charts.PointIndexResult):
        return f"index={result.index} {result.verdict}"
    if isinstance(result, charts.FieldClassification):
        return f"{result.aggregate.value} {result.verdict}"
    if isinstance(result, dict):
        parts = []
        for k, v in result.items():
            if isinstance(v, gen_num.Verdict):
                parts.append(f"{k}={v.status.value}")
            elif isinstance(v, causal.CausalClass):
                parts.append(f"{k}={v.kind.value}")
            elif isinstance(v, float):
                parts.append(f"{k}={v:.3g}")
            elif isinstance(v, (str, int, bool)):
                parts.append(f"{k}={v}")
            elif isinstance(v, dict) and v and all(isinstance(x, gen_num.Verdict) for x in v.values()):
                held = sum(x.holds for x in v.values())
                parts.append(f"{k}={held}/{len(v)} Holds")
        return " ".join(parts)
    if isinstance(result, GenMatrix):
        return f"matrix n={result.n}"
    return type(result).__name__


def run_manifest(man: Manifest, timing: bool = False, out=None) -> Tuple[dict, int]:
    """Execute tasks in order; return the report and the exit code."""
    out = out or sys.stdout
    tasks = []
    errored = False
    for t in man.tasks:
        entry = {"op": t.op, "args": list(t.args), "line": t.line}
        t0 = time.perf_counter()
        try:
            fn, vals = _resolve(t, man.objects)
            result = fn(*vals)
            entry["status"] = "ok"
            entry["result"] = to_json(result)
            line = f"[ok]    {t.op}({', '.join(t.args)}): {_summary(result)}"
        except GenNumError as exc:
            errored = True
            entry["status"] = "error"
            entry["error"] = {"type": type(exc).__name__, "message": str(exc)}
            if exc.verdict is not None:
                entry["error"]["verdict"] = exc.verdict.to_dict()
            line = f"[error] {t.op}({', '.join(t.args)}): {type(exc).__name__}: {exc}"
        if timing:
            entry["runtime_s"] = round(time.perf_counter() - t0, 6)
        tasks.append(entry)
        print(line, file=out)
    report = {"schema": SCHEMA, "grid": grid_to_json(man.grid), "status": "error" if errored else "ok", "tasks": tasks}
    return report, 1 if errored else 0


# ------------------------------------------------------------ entry point


def _grid_from_args(args) -> EpsGrid:
    k = args.kmax if args.kmax is not None else default_grid().k_max
    _check_kmax(k)
    return EpsGrid(k, args.tail, args.mcap if args.mcap is not None else gen_num.DEFAULT_MCAP)


def _write_json(path: Optional[str], report: dict):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(report))


def _run_demo(name: str, args) -> int:
    grid = _grid_from_args(args)
    try:
        res = run_demo(name, grid)
    except UnknownDemo as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(f"demo {name}: {res['conclusion']}")
    report = {"schema": SCHEMA, "grid": grid_to_json(grid), "demo": to_json(res)}
    _write_json(args.json, report)
    return 0 if res["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gennum", description="Generalized-number verdicts from manifests and demos.")
    p.add_argument("--demo", metavar="NAME", help="run a named demo (%s)" % ", ".join(sorted(DEMOS)))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kmax", type=int, help="number of grid samples (8..64; env GENNUM_KMAX)")
    common.add_argument("--tail", type=int, help="first grid index of the tail window")
    common.add_argument("--mcap", type=int, help="exponent cap for negligibility/moderateness")
    common.add_argument("--seed", type=int, default=0, help="seed for generated point families")
    common.add_argument("--json", metavar="PATH", help="write the JSON report here")
    common.add_argument("--timing", action="store_true", help="include per-task runtimes in the report")
    for a in common._actions:
        if a.dest != "help":
            p._add_action(a)
    sub = p.add_subparsers(dest="cmd")
    r = sub.add_parser("run", parents=[common], help="run a manifest")
    r.add_argument("manifest")
    d = sub.add_parser("demo", parents=[common], help="run a named demo")
    d.add_argument("name")
    sub.add_parser("list-demos", help="list available demos")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.demo:
            return _run_demo(args.demo, args)
        if args.cmd == "demo":
            return _run_demo(args.name, args)
        if args.cmd == "list-demos":
            for name in sorted(DEMOS):
                print(name)
            return 0
        if args.cmd != "run":
            parser.print_help()
            return 2
        with open(args.manifest, encoding="utf-8") as fh:
            text = fh.read()
        try:
            man = load_manifest(text, args.kmax, args.tail, args.mcap, args.seed)
        except GenNumError as exc:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
            report = {"schema": SCHEMA, "status": "load_error",
                      "error": {"type": type(exc).__name__, "message": str(exc)}, "tasks": []}
            _write_json(args.json, report)
            return 2
        report, code = run_manifest(man, timing=args.timing)
        _write_json(args.json, report)
        return code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

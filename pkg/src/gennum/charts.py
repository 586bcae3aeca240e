"""Metric and vector fields on a single chart, evaluated at generalized points.

A field is a pure function ``(eps, x) -> array``; a generalized point is a
pure function ``eps -> x``.  Evaluating a field at a point samples
``f(eps_k, x_{eps_k})`` on the grid and yields the nets of
:mod:`gennum.gen_linalg`.  Statements that quantify over all compactly
supported generalized points are checked on a finite family that includes
standard points, points drifting at speed eps, and points that alternate
with the grid parity.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence

import numpy as np

from .causal import BilinearForm, CausalClass, CausalKind, classify, same_orientation
from .errors import DegenerateAtPoint, NotLorentzian, OrientationMismatch, PointOutsideDomain
from .gen_linalg import GenMatrix, GenVector, MatrixIndex, is_nondegenerate, matrix_index
from .gen_num import (
    EpsGrid,
    GenNumber,
    Status,
    Verdict,
    default_grid,
    holds,
    is_invertible,
)


@dataclass(frozen=True)
class ChartDomain:
    """Open box ``prod (lo_i, hi_i)`` in R^n."""

    lo: tuple
    hi: tuple
    name: str = "U"

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lo)
        hi = tuple(float(x) for x in self.hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("box bounds must be nonempty and of equal length")
        if any(a >= b for a, b in zip(lo, hi)):
            raise ValueError("box must be nonempty: lo < hi in every coordinate")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def n(self) -> int:
        return len(self.lo)

    def contains(self, pts) -> np.ndarray:
        """Strict interior test for an array of points ``(..., n)``."""
        p = np.asarray(pts, dtype=np.float64)
        return np.all((p > np.asarray(self.lo)) & (p < np.asarray(self.hi)), axis=-1)

    @property
    def center(self) -> np.ndarray:
        return 0.5 * (np.asarray(self.lo) + np.asarray(self.hi))


@dataclass(frozen=True)
class MetricField:
    """``(eps, x) -> n x n`` matrix; the output is symmetrized on evaluation."""

    evaluator: Callable
    domain: ChartDomain
    label: str = ""

    def at(self, eps: float, x) -> np.ndarray:
        a = np.asarray(self.evaluator(eps, np.asarray(x, dtype=np.float64)), dtype=np.float64)
        return 0.5 * (a + a.T)


@dataclass(frozen=True)
class VectorField:
    """``(eps, x) -> R^n``."""

    evaluator: Callable
    domain: ChartDomain
    label: str = ""

    def at(self, eps: float, x) -> np.ndarray:
        return np.asarray(self.evaluator(eps, np.asarray(x, dtype=np.float64)), dtype=np.float64)


@dataclass(frozen=True)
class ScalarField:
    """``(eps, x) -> R``."""

    evaluator: Callable
    domain: ChartDomain
    label: str = ""

    def at(self, eps: float, x) -> float:
        return float(self.evaluator(eps, np.asarray(x, dtype=np.float64)))


class GenPoint:
    """Generalized point ``eps -> x_eps`` sampled on a grid.

    The compact-support certificate is the bounding box of the tail samples.
    """

    __slots__ = ("grid", "samples", "label", "_evaluator")

    def __init__(self, evaluator: Callable, grid: Optional[EpsGrid] = None, label: str = ""):
        grid = grid or default_grid()
        pts = np.array([np.asarray(evaluator(e), dtype=np.float64).reshape(-1) for e in grid.eps.tolist()])
        pts.flags.writeable = False
        self.grid = grid
        self.samples = pts
        self.label = label
        self._evaluator = evaluator

    @property
    def n(self) -> int:
        return self.samples.shape[1]

    @property
    def bounding_box(self):
        t = self.samples[self.grid.tail]
        return t.min(axis=0), t.max(axis=0)

    def check_in(self, domain: ChartDomain):
        """Raise :class:`PointOutsideDomain` unless every tail sample lies in the box."""
        if self.n != domain.n:
            raise PointOutsideDomain(f"point has dimension {self.n}, domain {domain.n}")
        inside = domain.contains(self.samples[self.grid.tail])
        if not inside.all():
            bad = self.grid.tail_ks[~inside]
            raise PointOutsideDomain(
                f"point {self.label or ''} leaves {domain.name} at k={bad.tolist()[:6]}",
                Verdict(Status.FAILS, None, tuple(bad)),
            )

    def __repr__(self):
        return f"<GenPoint {self.label} last={self.samples[-1]}>"


def _slices(point: GenPoint, domain: ChartDomain):
    point.check_in(domain)
    return zip(point.grid.eps.tolist(), point.samples)


def eval_metric(gf: MetricField, p: GenPoint) -> GenMatrix:
    """Metric net ``g_eps(x_eps)`` at a generalized point."""
    mats = np.array([gf.at(e, x) for e, x in _slices(p, gf.domain)])
    return GenMatrix(p.grid, mats, None, symmetric=True)


def eval_vector(vf: VectorField, p: GenPoint) -> GenVector:
    return GenVector(p.grid, np.array([vf.at(e, x) for e, x in _slices(p, vf.domain)]))


def eval_scalar(sf: ScalarField, p: GenPoint) -> GenNumber:
    return GenNumber(p.grid, [sf.at(e, x) for e, x in _slices(p, sf.domain)])


# ------------------------------------------------------------ point families


def default_points(domain: ChartDomain, grid: Optional[EpsGrid] = None, count: int = 32, seed: int = 0) -> List[GenPoint]:
    """Sample family of compactly supported generalized points.

    Roughly a third each of standard points ``x``, drifting points
    ``x + eps v`` and parity-alternating points (``a`` on even ``k``, ``b``
    on odd ``k``), all well inside the box.  Deterministic given ``seed``.
    """
    grid = grid or default_grid()
    rng = np.random.default_rng(seed)
    lo, hi = np.asarray(domain.lo), np.asarray(domain.hi)
    width = hi - lo
    inner_lo, inner_hi = lo + 0.2 * width, hi - 0.2 * width

    def draw():
        return inner_lo + rng.random(domain.n) * (inner_hi - inner_lo)

    pts = []
    n_std = count - 2 * (count // 3)
    for i in range(n_std):
        x = draw()
        pts.append(GenPoint(lambda e, x=x: x, grid, f"standard{i}"))
    for i in range(count // 3):
        x = draw()
        v = (rng.random(domain.n) - 0.5) * 0.2 * width
        pts.append(GenPoint(lambda e, x=x, v=v: x + e * v, grid, f"drifting{i}"))
    for i in range(count // 3):
        a, b = draw(), draw()
        pts.append(GenPoint(lambda e, a=a, b=b: a if grid.index_of(e) % 2 == 0 else b, grid, f"alternating{i}"))
    return pts


# ------------------------------------------------------------ index at points


@dataclass(frozen=True)
class PointIndexResult:
    """Common index across points, or the evidence that there is none."""

    verdict: Verdict
    index: Optional[int]
    per_point: List[MatrixIndex]
    labels: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict.to_dict(),
            "index": self.index,
            "per_point": [{"point": l, **m.to_dict()} for l, m in zip(self.labels, self.per_point)],
        }


def metric_index_at_points(gf: MetricField, points: Sequence[GenPoint]) -> PointIndexResult:
    """Index of the metric at each point; Holds with ``j`` when all agree.

    Raises
    ------
    DegenerateAtPoint
        If the metric is definitely degenerate (Fails) at some point.
    """
    results = []
    for p in points:
        m = eval_metric(gf, p)
        nd = is_nondegenerate(m)
        if nd.fails:
            raise DegenerateAtPoint(f"metric degenerate at point {p.label}: {nd}", nd)
        results.append(matrix_index(m))
    labels = [p.label for p in points]
    for lab, r in zip(labels, results):
        if not r.defined:
            v = Verdict(r.verdict.status if r.verdict.witnesses else Status.INCONCLUSIVE, None,
                        r.verdict.witnesses, f"no index at point {lab}")
            return PointIndexResult(_as_fail(v), None, results, labels)
    idx = {r.nu_minus for r in results}
    if len(idx) > 1:
        wit = tuple(points[0].grid.tail_ks)
        v = Verdict(Status.FAILS, None, wit, f"index varies across points: {sorted(idx)}")
        return PointIndexResult(v, None, results, labels)
    j = idx.pop()
    return PointIndexResult(holds(max(r.verdict.exponent for r in results)), j, results, labels)


def _as_fail(v: Verdict) -> Verdict:
    # an undefined index at any sampled point refutes a constant index
    if v.witnesses:
        return Verdict(Status.FAILS, None, v.witnesses, v.note)
    return v


# ------------------------------------------------------------ causality


@dataclass(frozen=True)
class FieldClassification:
    per_point: List[CausalClass]
    aggregate: CausalKind
    verdict: Verdict
    labels: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "aggregate": self.aggregate.value,
            "verdict": self.verdict.to_dict(),
            "per_point": [{"point": l, "kind": c.kind.value} for l, c in zip(self.labels, self.per_point)],
        }


def _lorentzian_at(gf: MetricField, points: Sequence[GenPoint]) -> List[BilinearForm]:
    forms = []
    for p in points:
        try:
            form = BilinearForm.from_matrix(eval_metric(gf, p))
        except NotLorentzian:
            raise
        except Exception as exc:
            if isinstance(exc, PointOutsideDomain):
                raise
            raise NotLorentzian(f"metric not a Lorentzian form at {p.label}: {exc}") from exc
        if not form.is_lorentzian:
            raise NotLorentzian(f"metric has index {form.index_certificate.nu_minus} at {p.label}",
                                form.index_certificate.verdict)
        forms.append(form)
    return forms


def classify_field(gf: MetricField, vf: VectorField, points: Sequence[GenPoint]) -> FieldClassification:
    """Causal class of a vector field at each sampled point.

    The aggregate is the common class when all points agree, otherwise
    Unclassifiable; the verdict Holds only for a common class.
    """
    forms = _lorentzian_at(gf, points)
    classes = [classify(f, eval_vector(vf, p)) for f, p in zip(forms, points)]
    kinds = {c.kind for c in classes}
    labels = [p.label for p in points]
    if len(kinds) == 1:
        kind = kinds.pop()
        if kind is not CausalKind.UNCLASSIFIABLE:
            exps = [v.exponent for c in classes for v in c.verdicts.values() if v.holds]
            return FieldClassification(classes, kind, holds(max(exps) if exps else 0), labels)
    wit = tuple(points[0].grid.tail_ks)
    v = Verdict(Status.FAILS, None, wit, f"classes differ across points: {sorted(k.value for k in {c.kind for c in classes})}")
    return FieldClassification(classes, CausalKind.UNCLASSIFIABLE, v, labels)


def riemannian_from_timelike(gf: MetricField, xi_field: VectorField, eta_field: VectorField,
                             points: Sequence[GenPoint]):
    """Riemannian metric ``h = xi_(a eta_b) - g(xi, eta) g_ab / 2`` from two
    co-oriented time-like fields; returns ``(h_field, PointIndexResult)``.

    Raises
    ------
    NotLorentzian, OrientationMismatch
    """
    forms = _lorentzian_at(gf, points)
    for f, p in zip(forms, points):
        xi, eta = eval_vector(xi_field, p), eval_vector(eta_field, p)
        for name, x in (("xi", xi), ("eta", eta)):
            c = classify(f, x)
            if c.kind is not CausalKind.TIMELIKE:
                raise OrientationMismatch(f"{name} is {c.kind.value} at {p.label}", c.verdicts["negative"])
        so = same_orientation(f, xi, eta)
        if not so.holds:
            raise OrientationMismatch(f"xi and eta not co-oriented at {p.label}: {so}", so)

    def h_eval(eps, x):
        g = gf.at(eps, x)
        a = xi_field.at(eps, x)
        b = eta_field.at(eps, x)
        al, bl = g @ a, g @ b
        return 0.5 * (np.outer(al, bl) + np.outer(bl, al)) - 0.5 * float(a @ g @ b) * g

    h = MetricField(h_eval, gf.domain, f"h({gf.label})")
    return h, metric_index_at_points(h, points)


def invertible_at_points(sf: ScalarField, points: Sequence[GenPoint]) -> Verdict:
    """Sampled check that a generalized function is invertible at every point."""
    worst = None
    exps = []
    for p in points:
        v = is_invertible(eval_scalar(sf, p))
        if v.holds:
            exps.append(v.exponent)
            continue
        v = Verdict(v.status, None, v.witnesses, f"not invertible at {p.label}")
        if v.fails:
            return v
        worst = worst or v
    return worst or holds(max(exps))


# ------------------------------------------------------------ fixtures


def bump(y: float) -> float:
    """Smooth bump ``exp(-1 / (1 - y**2))`` on ``|y| < 1``, zero outside."""
    if abs(y) >= 1.0:
        return 0.0
    return math.exp(-1.0 / (1.0 - y * y))


def moving_bump(eps: float, x) -> float:
    """``u_eps(x) = bump((x_1 - eps) / eps) / eps``: a mollifier whose support
    shrinks onto 0 while moving with speed eps."""
    x1 = float(np.asarray(x).reshape(-1)[0])
    return bump((x1 - eps) / eps) / eps

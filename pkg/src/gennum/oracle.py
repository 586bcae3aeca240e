"""Independent per-slice validators.

Nothing here shares numerical code with the main pipeline: eigenvalues come
from closed forms (n <= 3) or from bisection on an LDL^T inertia count
(n <= 6), classical causal characters from the sign of ``u^T g u``, and
freeness from the per-slice maximum coordinate.  Each function returns one
:class:`SliceReport` per grid index so disagreements can be pinned to a
specific eps.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .errors import DimensionTooLarge, SliceNotLorentzian

MAX_DIM = 6
_EPS64 = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class SliceReport:
    """Classical result at grid index ``k`` and its deviation from the pipeline.

    ``value`` is the classical result (eigenvalues, a causal label, a
    magnitude); ``delta`` the comparison with the generalized computation
    (0.0 when there is nothing to compare); ``distance`` and ``bound`` hold
    the perturbation check when one was requested.
    """

    k: int
    value: object
    delta: float = 0.0
    distance: Optional[float] = None
    bound: Optional[float] = None

    def __post_init__(self):
        if not math.isfinite(self.delta):
            raise ValueError("slice delta must be finite")

    def within_bound(self, tol: float = 0.0) -> bool:
        return self.bound is None or self.distance <= self.bound + tol


# ------------------------------------------------------------ eigenvalues


def quadratic_eigs(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric 2x2 matrix, descending."""
    p, q, r = float(a[0, 0]), float(a[0, 1]), float(a[1, 1])
    m = 0.5 * (p + r)
    d = math.hypot(0.5 * (p - r), q)
    return np.array([m + d, m - d])


def cubic_eigs(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric 3x3 matrix by the trigonometric method, descending."""
    p1 = a[0, 1] ** 2 + a[0, 2] ** 2 + a[1, 2] ** 2
    q = float(np.trace(a)) / 3.0
    if p1 == 0.0:
        return np.sort(np.diag(a).astype(float))[::-1]
    p2 = (a[0, 0] - q) ** 2 + (a[1, 1] - q) ** 2 + (a[2, 2] - q) ** 2 + 2.0 * p1
    p = math.sqrt(p2 / 6.0)
    b = (a - q * np.eye(3)) / p
    r = (
        b[0, 0] * (b[1, 1] * b[2, 2] - b[1, 2] * b[2, 1])
        - b[0, 1] * (b[1, 0] * b[2, 2] - b[1, 2] * b[2, 0])
        + b[0, 2] * (b[1, 0] * b[2, 1] - b[1, 1] * b[2, 0])
    ) / 2.0
    phi = math.acos(min(1.0, max(-1.0, r))) / 3.0
    l1 = q + 2.0 * p * math.cos(phi)
    l3 = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    l2 = 3.0 * q - l1 - l3
    return np.sort(np.array([l1, l2, l3]))[::-1]


def count_below(a: np.ndarray, x: float, pivmin: Optional[float] = None) -> int:
    """Number of eigenvalues of symmetric ``a`` below ``x`` (Sylvester inertia of ``a - x I``).

    Unpivoted LDL^T on Python floats; pivots smaller than ``pivmin``
    (default ``eps * max(1, max|a - x I|)``) are replaced by ``-pivmin``,
    as in Sturm-count bisection codes.
    """
    n = a.shape[0]
    m = (a - x * np.eye(n)).tolist()
    if pivmin is None:
        pivmin = _EPS64 * max(1.0, max(abs(v) for row in m for v in row))
    d = [0.0] * n
    l = [[0.0] * n for _ in range(n)]
    neg = 0
    for j in range(n):
        lj = l[j]
        s = m[j][j]
        for k in range(j):
            s -= lj[k] * lj[k] * d[k]
        if abs(s) < pivmin:
            s = -pivmin
        d[j] = s
        if s < 0:
            neg += 1
        for i in range(j + 1, n):
            li = l[i]
            t = m[i][j]
            for k in range(j):
                t -= li[k] * lj[k] * d[k]
            li[j] = t / s
    return neg


def bisection_eigs(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by bisection inside the Gershgorin bracket, descending."""
    n = a.shape[0]
    radii = np.sum(np.abs(a), axis=1) - np.abs(np.diag(a))
    lo = float(np.min(np.diag(a) - radii)) - 1e-12
    hi = float(np.max(np.diag(a) + radii)) + 1e-12
    pivmin = _EPS64 * max(1.0, abs(lo), abs(hi))
    out = []
    for i in range(n):
        # i-th smallest eigenvalue: smallest x with count_below(x) > i
        a_lo, a_hi = lo, hi
        for _ in range(200):
            mid = 0.5 * (a_lo + a_hi)
            if mid == a_lo or mid == a_hi:
                break
            if count_below(a, mid, pivmin) > i:
                a_hi = mid
            else:
                a_lo = mid
            if a_hi - a_lo <= 2e-16 * max(abs(a_lo), abs(a_hi), 1e-300):
                break
        out.append(0.5 * (a_lo + a_hi))
    return np.array(out)[::-1]


def classical_eigs(a: np.ndarray) -> np.ndarray:
    """Descending eigenvalues of one symmetric slice."""
    n = a.shape[0]
    if n > MAX_DIM:
        raise DimensionTooLarge(f"oracle handles n <= {MAX_DIM}, got {n}")
    if n == 1:
        return np.array([float(a[0, 0])])
    if n == 2:
        return quadratic_eigs(a)
    if n == 3:
        return cubic_eigs(a)
    return bisection_eigs(a)


def ordered_spectrum(a: np.ndarray) -> np.ndarray:
    """Spectrum of a possibly non-symmetric slice ordered by descending real part."""
    w = np.linalg.eigvals(a)
    return w[np.argsort(-w.real, kind="stable")]


def slice_eigen_oracle(A, perturbation=None, pipeline=None) -> List[SliceReport]:
    """Classical eigenvalues per slice, compared with the generalized eigenvalues.

    Parameters
    ----------
    A : GenMatrix
        Symmetric-class matrix.
    perturbation : GenMatrix, optional
        ``E``; each slice reports the l2 distance between the ordered
        spectra of ``A`` and ``A + E`` and the bound ``sqrt(2) ||E||_F``.
    pipeline : EigenResult, optional
        Output of :func:`gennum.gen_linalg.gen_eigen` to compare against.
    """
    mids = np.asarray(A.mid)
    n = mids.shape[1]
    if n > MAX_DIM:
        raise DimensionTooLarge(f"oracle handles n <= {MAX_DIM}, got {n}")
    sym = 0.5 * (mids + np.swapaxes(mids, 1, 2))
    pipe = None
    if pipeline is not None:
        pipe = np.stack([lam.samples for lam in pipeline.eigenvalues], axis=1)
    out = []
    for i, k in enumerate(A.grid.ks.tolist()):
        w = classical_eigs(sym[i])
        delta = float(np.max(np.abs(w - pipe[i]))) if pipe is not None else 0.0
        dist = bound = None
        if perturbation is not None:
            e = np.asarray(perturbation.mid[i])
            s0 = ordered_spectrum(sym[i])
            s1 = ordered_spectrum(sym[i] + e)
            dist = float(np.sqrt(np.sum(np.abs(s1 - s0) ** 2)))
            bound = math.sqrt(2.0) * float(np.sqrt(np.sum(e * e)))
        out.append(SliceReport(k, w, delta, dist, bound))
    return out


# ------------------------------------------------------------ causality


def _classical_label(g: np.ndarray, u: np.ndarray) -> str:
    q = float(u @ g @ u)
    if q < 0:
        return "timelike"
    if q > 0:
        return "spacelike"
    return "null" if np.any(u != 0) else "zero"


def slice_causality_oracle(g, u) -> List[SliceReport]:
    """Classical causal label of ``u`` in each slice of ``g``.

    Raises
    ------
    SliceNotLorentzian
        If a tail slice of ``g`` does not have exactly one negative eigenvalue.
    """
    gm = np.asarray(g.g.mid if hasattr(g, "g") else g.mid)
    um = np.asarray(u.mid)
    grid = u.grid
    out = []
    for i, k in enumerate(grid.ks.tolist()):
        sl = 0.5 * (gm[i] + gm[i].T)
        if k >= grid.tail_start:
            n = sl.shape[0]
            neg = count_below(sl, 0.0)
            if neg != 1 or count_below(sl, -0.0) != 1 or np.linalg.matrix_rank(sl) < n:
                raise SliceNotLorentzian(f"slice k={k} has {neg} negative eigenvalues")
        out.append(SliceReport(k, _classical_label(sl, um[i]), 0.0))
    return out


def expected_causal_kind(reports: List[SliceReport], tail_start: int) -> Optional[str]:
    """Kind the generalized classification should return when every tail
    slice agrees classically; ``"Unclassifiable"`` when timelike and
    spacelike slices mix; ``None`` when no uniform expectation exists."""
    labels = {r.value for r in reports if r.k >= tail_start}
    if labels == {"timelike"}:
        return "TimeLike"
    if labels == {"spacelike"}:
        return "SpaceLike"
    if "timelike" in labels and "spacelike" in labels:
        return "Unclassifiable"
    return None


# ------------------------------------------------------------ freeness


@dataclass(frozen=True)
class FreenessSummary:
    reports: List[SliceReport]
    exponent: Optional[int]
    free: bool


def freeness_oracle(v) -> FreenessSummary:
    """Per-slice maximum coordinate magnitude and a fitted lower-bound exponent.

    The vector counts as free when every tail slice is nonzero and the
    maximum stays above ``eps**m_cap``; the exponent is the rounded slope of
    ``-log2 max|v|`` against ``k`` over the tail.
    """
    grid = v.grid
    mx = np.max(np.abs(np.asarray(v.mid)), axis=1)
    reports = [SliceReport(k, float(m), 0.0) for k, m in zip(grid.ks.tolist(), mx)]
    tail = mx[grid.tail]
    ks = grid.tail_ks.astype(float)
    if np.any(tail == 0):
        return FreenessSummary(reports, None, False)
    e = -np.log2(tail)
    if np.any(e >= grid.m_cap * ks):
        return FreenessSummary(reports, None, False)
    slope = float(np.polyfit(ks, e, 1)[0])
    return FreenessSummary(reports, int(round(slope)), True)

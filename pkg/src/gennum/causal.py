"""Lorentzian geometry over the generalized numbers.

Bilinear forms with certified index, causal classification of vectors, the
orthogonal complement of a time-like vector, the inverse Cauchy-Schwarz
inequality, Lorentz boosts, the Riemannian form built from two co-oriented
time-like vectors, and the dominant energy condition.
"""

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from . import _tracked as T
from .errors import (
    Degenerate,
    NotFree,
    NotLorentzian,
    NotSameOrientation,
    NotTimeLike,
    NotUnit,
)
from .gen_linalg import (
    GenMatrix,
    GenVector,
    MatrixIndex,
    bilinear,
    coordinate_matrix,
    det,
    extend_to_basis,
    eigen_nondegenerate,
    gen_eigen,
    inverse,
    is_free,
    is_nondegenerate,
    matrix_index,
    outer,
    symmetrize,
)
from .gen_num import (
    EpsGrid,
    GenNumber,
    Verdict,
    const,
    divide,
    gsqrt,
    is_negligible,
    is_strictly_negative,
    is_strictly_positive,
    leq,
)


# ----------------------------------------------------------- bilinear forms


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric non-degenerate form ``g`` with its index certificate."""

    g: GenMatrix
    index_certificate: MatrixIndex
    _inverse: list = field(default_factory=list, repr=False, compare=False)

    @classmethod
    def from_matrix(cls, g: GenMatrix) -> "BilinearForm":
        """Symmetrize, check non-degeneracy and compute the index.

        Raises
        ------
        NotSymmetricClass, Degenerate
        """
        g = symmetrize(g)
        eig = gen_eigen(g)
        nd = eigen_nondegenerate(eig)
        if not nd.holds:
            raise Degenerate(f"form is degenerate: {nd}", nd)
        return cls(g, matrix_index(g))

    @property
    def grid(self) -> EpsGrid:
        return self.g.grid

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def is_lorentzian(self) -> bool:
        return self.index_certificate.is_lorentzian

    @property
    def inverse(self) -> GenMatrix:
        """Contravariant components ``g^{ab}`` (computed once)."""
        if not self._inverse:
            self._inverse.append(inverse(self.g))
        return self._inverse[0]

    def __call__(self, u: GenVector, v: GenVector) -> GenNumber:
        return bilinear(self.g, u, v)

    def lower(self, u: GenVector) -> GenVector:
        """Covector ``u_a = g_ab u^b``."""
        return self.g @ u

    def raise_(self, c: GenVector) -> GenVector:
        return self.inverse @ c


def minkowski(n: int = 4, grid: Optional[EpsGrid] = None) -> BilinearForm:
    d = np.ones(n)
    d[0] = -1.0
    return BilinearForm.from_matrix(GenMatrix.const(np.diag(d), grid))


def _require_lorentzian(g: BilinearForm):
    if not g.is_lorentzian:
        raise NotLorentzian(f"form has index {g.index_certificate.nu_minus}", g.index_certificate.verdict)


# ----------------------------------------------------------- classification


class CausalKind(enum.Enum):
    TIMELIKE = "TimeLike"
    NULL = "Null"
    SPACELIKE = "SpaceLike"
    UNCLASSIFIABLE = "Unclassifiable"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class CausalClass:
    """Causal character of a vector with the verdicts that decided it."""

    kind: CausalKind
    norm: GenNumber
    verdicts: Dict[str, Verdict]
    note: str = ""

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "verdicts": {k: v.to_dict() for k, v in self.verdicts.items()},
            "note": self.note,
        }


def classify(g: BilinearForm, u: GenVector) -> CausalClass:
    """Time-like, null, space-like, or none of these.

    Null means ``g(u, u)`` negligible and ``u`` free, or ``u`` itself
    negligible.  A vector with negligible norm that is neither free nor
    zero is reported as Unclassifiable.
    """
    _require_lorentzian(g)
    q = g(u, u)
    verdicts = {"negative": is_strictly_negative(q)}
    if verdicts["negative"].holds:
        return CausalClass(CausalKind.TIMELIKE, q, verdicts)
    verdicts["positive"] = is_strictly_positive(q)
    if verdicts["positive"].holds:
        return CausalClass(CausalKind.SPACELIKE, q, verdicts)
    verdicts["negligible"] = is_negligible(q)
    if verdicts["negligible"].holds:
        verdicts["free"] = is_free(u)
        if verdicts["free"].holds:
            return CausalClass(CausalKind.NULL, q, verdicts)
        verdicts["zero"] = u.is_negligible()
        if verdicts["zero"].holds:
            return CausalClass(CausalKind.NULL, q, verdicts, "zero vector")
        return CausalClass(CausalKind.UNCLASSIFIABLE, q, verdicts, "norm negligible but vector neither free nor zero")
    return CausalClass(CausalKind.UNCLASSIFIABLE, q, verdicts, "norm has no definite sign and is not negligible")


def _require_timelike(g: BilinearForm, *vs: GenVector):
    for i, v in enumerate(vs):
        c = classify(g, v)
        if c.kind is not CausalKind.TIMELIKE:
            raise NotTimeLike(f"argument {i} is {c.kind.value}", c.verdicts["negative"])


def same_orientation(g: BilinearForm, u: GenVector, v: GenVector) -> Verdict:
    """Co-orientation of time-like vectors: ``g(u, v)`` strictly negative."""
    _require_timelike(g, u, v)
    return is_strictly_negative(g(u, v))


def normalize(g: BilinearForm, u: GenVector) -> GenVector:
    """``u / sqrt(-g(u, u))`` for time-like ``u``."""
    _require_timelike(g, u)
    s = gsqrt(g(u, u))
    return u.scale(divide(const(1.0, g.grid), s))


# ----------------------------------------------------------- complement


def _adapted_basis(u: GenVector) -> GenMatrix:
    """Columns ``u / u_i, A e_2, ..., A e_n`` with ``u_i`` the largest coordinate.

    Dividing by the invertible ``u_i`` leaves the complement unchanged and
    keeps ``B^T g B`` of order one when ``u`` is small or large, so the
    a priori radius of its inverse stays finite.
    """
    k = np.arange(u.grid.k_max)
    idx = np.argmax(np.abs(u.mid), axis=1)
    lead = GenNumber(u.grid, u.mid[k, idx], u.rad[k, idx])
    un = u.scale(divide(const(1.0, u.grid), lead))
    return coordinate_matrix(extend_to_basis(un))


def orthogonal_complement_basis(g: BilinearForm, u: GenVector) -> List[GenVector]:
    """Basis ``xi_(2), ..., xi_(n)`` of the g-orthogonal complement of ``u``.

    In coordinates adapted to ``u`` (``u``, rescaled by its largest coordinate, is the
    first basis vector of :func:`extend_to_basis`) the complement is spanned by rows 2..n of the
    inverse of the transformed metric ``g' = B^T g B``; those rows are
    mapped back to canonical coordinates.
    """
    _require_timelike(g, u)
    b = _adapted_basis(u)
    gp = b.T @ g.g @ b
    gpi = inverse(symmetrize(gp))
    out = []
    for k in range(1, g.n):
        out.append(b @ gpi.row(k))
    return out


def gram(g: BilinearForm, vectors: List[GenVector]) -> GenMatrix:
    """``g(v_i, v_j)`` as a matrix."""
    m = len(vectors)
    rows = [[g(vectors[i], vectors[j]) for j in range(m)] for i in range(m)]
    return symmetrize(GenMatrix.from_entries(rows, g.grid))


def complement_determinant_gap(g: BilinearForm, u: GenVector) -> GenNumber:
    """``det(g^{AB}) det(g') - g'_{11}`` in coordinates adapted to ``u``.

    ``g^{AB}`` is the lower-right block of the inverse of ``g'``; the gap is
    negligible (cofactor identity for the inverse).
    """
    _require_timelike(g, u)
    b = _adapted_basis(u)
    gp = symmetrize(b.T @ g.g @ b)
    gpi = inverse(gp)
    n = g.n
    block = GenMatrix(g.grid, gpi.mid[:, 1:, 1:], gpi.rad[:, 1:, 1:])
    return det(block) * det(gp) - gp[0, 0]


# ----------------------------------------------------------- decomposition


def decompose(g: BilinearForm, u: GenVector, v: GenVector):
    """``v = a u + w`` with ``a = g(u, v) / g(u, u)`` and ``g(u, w) = 0``."""
    _require_timelike(g, u)
    a = divide(g(u, v), g(u, u))
    w = v - u.scale(a)
    return a, w


def uvfree_repair(cov: GenVector, v: GenVector) -> GenVector:
    """Rewrite one coordinate of ``v`` per grid index so that ``cov . v = 0``.

    The rewritten coordinate is the one where ``cov`` is largest in
    magnitude.  ``cov . v`` must be negligible, so the repaired vector
    represents the same class.
    """
    c, rc = T.dot(cov.mid, cov.rad, v.mid, v.rad)
    n_net = GenNumber(v.grid, c, rc)
    verdict = is_negligible(n_net)
    if not verdict.holds:
        raise ValueError(f"cov . v is not negligible: {verdict}")
    k = np.arange(v.grid.k_max)
    j = np.argmax(np.abs(cov.mid), axis=1)
    mid = v.mid.copy()
    cj = cov.mid[k, j]
    with np.errstate(all="ignore"):
        # solve cov . v = 0 for coordinate j, keeping the others
        rest = np.einsum("ki,ki->k", cov.mid, mid) - cj * mid[k, j]
        newv = np.where(cj != 0, -rest / np.where(cj != 0, cj, 1.0), mid[k, j])
    mid[k, j] = newv
    return GenVector(v.grid, mid, v.rad)


# ----------------------------------------------------------- Cauchy-Schwarz


@dataclass(frozen=True)
class CSReport:
    """Inverse Cauchy-Schwarz data for a pair of time-like vectors."""

    lhs: GenNumber
    rhs: GenNumber
    gap: GenNumber
    inequality: Verdict
    strict: Verdict
    label: str
    w_free: Verdict
    a: GenNumber
    w: GenVector

    def to_dict(self) -> dict:
        return {
            "inequality": self.inequality.to_dict(),
            "strict": self.strict.to_dict(),
            "label": self.label,
            "w_free": self.w_free.to_dict(),
        }


def inverse_cauchy_schwarz(g: BilinearForm, u: GenVector, v: GenVector) -> CSReport:
    """Check ``g(u, v)**2 >= g(u, u) g(v, v)`` for time-like ``u, v``.

    The gap is evaluated through the decomposition ``v = a u + w``, using
    the exact identity ``gap = g(u, w)**2 - g(u, u) g(w, w)``, which avoids
    cancelling the O(1) terms of ``lhs - rhs``.

    ``label`` is ``"strict"`` when the strict inequality Holds, ``"equality"``
    when the gap is negligible, and ``"zero-divisor-like"`` when the gap is
    neither strictly positive nor negligible.
    """
    _require_timelike(g, u, v)
    uv = g(u, v)
    uu = g(u, u)
    lhs = uv * uv
    rhs = uu * g(v, v)
    a, w = decompose(g, u, v)
    uw = g(u, w)
    gap = uw * uw - uu * g(w, w)
    ineq = leq(const(0.0, g.grid), gap)
    strict = is_strictly_positive(gap)
    if strict.holds:
        label = "strict"
    elif is_negligible(gap).holds:
        label = "equality"
    else:
        label = "zero-divisor-like"
    return CSReport(lhs, rhs, gap, ineq, strict, label, is_free(w), a, w)


# ----------------------------------------------------------- boosts


def lorentz_boost(g: BilinearForm, xi: GenVector, eta: GenVector) -> GenMatrix:
    """Lorentz transformation ``L`` (mixed components) with ``L xi = eta``.

    ``L = I - 2 eta xi_b^T + (xi + eta)(xi + eta)_b^T / (1 - g(xi, eta))``
    where ``_b`` lowers the index with ``g``.

    Raises
    ------
    NotUnit, NotSameOrientation, NotTimeLike
    """
    for name, x in (("xi", xi), ("eta", eta)):
        nv = is_negligible(g(x, x) + 1.0)
        if not nv.holds:
            raise NotUnit(f"{name} is not a unit time-like vector: {nv}", nv)
    so = same_orientation(g, xi, eta)
    if not so.holds:
        raise NotSameOrientation(f"xi and eta are not co-oriented: {so}", so)
    s = xi + eta
    den = 1.0 - g(xi, eta)
    coef = divide(const(1.0, g.grid), den)
    ident = GenMatrix.identity(g.n, g.grid)
    term1 = outer(eta, g.lower(xi)).scale(2.0)
    term2 = outer(s, g.lower(s)).scale(coef)
    return ident - term1 + term2


def boost_defects(g: BilinearForm, L: GenMatrix, xi: GenVector, eta: GenVector):
    """``(L^T g L - g, L xi - eta)``; both are negligible for a valid boost."""
    return L.T @ g.g @ L - g.g, L @ xi - eta


# ----------------------------------------------------------- metric from u, v


def metrconstr(g: BilinearForm, u: GenVector, v: GenVector) -> GenMatrix:
    """``h = u_(a v_b) - g(u, v) g_ab / 2`` with ``u_(a v_b) = (u_a v_b + u_b v_a) / 2``.

    Positive definite for co-oriented time-like ``u, v``.

    Raises
    ------
    NotTimeLike, NotSameOrientation
    """
    so = same_orientation(g, u, v)
    if not so.holds:
        raise NotSameOrientation(f"u and v are not co-oriented: {so}", so)
    ul, vl = g.lower(u), g.lower(v)
    sym = outer(ul, vl) + outer(vl, ul)
    h = sym.scale(0.5) - g.g.scale(g(u, v) * 0.5)
    return symmetrize(h)


# ----------------------------------------------------------- energy


@dataclass(frozen=True)
class EnergyTensor:
    """``E^{ab} = theta^a theta^b - g^{ab} g(theta, theta) / 2``."""

    E: GenMatrix
    theta: GenVector
    form: BilinearForm

    def symmetry_defect(self) -> GenMatrix:
        return self.E - self.E.T


def energy_tensor(g: BilinearForm, theta: GenVector) -> EnergyTensor:
    """Energy tensor of ``theta``.

    Built from the contravariant vector directly, so ``g^{ac} theta_c`` is
    ``theta^a`` without a round trip through the inverse metric.
    """
    tt = g(theta, theta)
    E = outer(theta, theta) - g.inverse.scale(tt * 0.5)
    return EnergyTensor(E, theta, g)


def flux_vector(E: EnergyTensor, xi: GenVector) -> GenVector:
    """``eta^b = E^{ab} xi_a``."""
    return E.E.T @ E.form.lower(xi)


def dominant_energy_check(E: EnergyTensor, xi: GenVector, eta: GenVector) -> Verdict:
    """``E^{ab} xi_a eta_b`` strictly positive.

    Raises
    ------
    NotFree
        If ``theta`` is not free.
    NotTimeLike, NotSameOrientation
    """
    g = E.form
    fv = is_free(E.theta)
    if not fv.holds:
        raise NotFree(f"theta is not free: {fv}", fv)
    so = same_orientation(g, xi, eta)
    if not so.holds:
        raise NotSameOrientation(f"xi and eta are not co-oriented: {so}", so)
    return is_strictly_positive(bilinear(E.E, g.lower(xi), g.lower(eta)))


def energy_identity_gap(E: EnergyTensor, xi: GenVector) -> GenNumber:
    """``g(eta, eta) - g(theta, theta)**2 g(xi, xi) / 4`` for the flux ``eta``."""
    g = E.form
    eta = flux_vector(E, xi)
    tt = g(E.theta, E.theta)
    return g(eta, eta) - tt * tt * g(xi, xi) * 0.25

"""Vectors and matrices over the ring of generalized numbers.

:class:`GenVector` and :class:`GenMatrix` store all grid slices at once as
stacked float arrays (shape ``(K, n)`` and ``(K, n, n)``) with matching
rounding radii.  Indexing an entry yields a :class:`GenNumber`.  The
per-slice numerical work (Jacobi, LU, Gauss-Jordan, Gram-Schmidt) runs in
:mod:`gennum.kernels`; results get a priori error radii so that the
asymptotic verdicts of :mod:`gennum.gen_num` apply to them.
"""

import itertools
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from . import _tracked as T
from . import kernels
from .errors import (
    CoefficientNotStrictlyNonzero,
    Degenerate,
    DegenerateGram,
    GridMismatch,
    NotFree,
    NotSymmetricClass,
)
from .gen_num import (
    EpsGrid,
    GenNumber,
    IndexSet,
    Status,
    Verdict,
    _from_violations,
    _log2_abs,
    chi,
    default_grid,
    holds,
    is_invertible,
    is_negligible,
    is_strictly_negative,
    is_strictly_nonzero,
    is_strictly_positive,
)

_EPS = T.EPS
_SAFE = T._SAFE


# ------------------------------------------------------------------ storage


class _Stack:
    """Common storage for vector and matrix nets."""

    __slots__ = ("grid", "mid", "rad")
    __array_priority__ = 100
    _ndim = 0

    def __init__(self, grid: EpsGrid, mid, rad=None):
        m = np.array(mid, dtype=np.float64)
        if m.ndim != self._ndim + 1 or m.shape[0] != grid.k_max:
            raise ValueError(f"expected shape (k_max, ...) with {self._ndim} trailing axes, got {m.shape}")
        r = np.zeros_like(m) if rad is None else np.array(np.broadcast_to(rad, m.shape), dtype=np.float64)
        m.flags.writeable = False
        r.flags.writeable = False
        self.grid = grid
        self.mid = m
        self.rad = r

    @property
    def n(self) -> int:
        return self.mid.shape[1]

    def _like(self, mid, rad):
        return type(self)(self.grid, mid, rad)

    def _other(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        if other.grid != self.grid:
            raise GridMismatch("operands live on different grids")
        if other.mid.shape != self.mid.shape:
            raise ValueError("shape mismatch")
        return other

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._like(*T.add(self.mid, self.rad, o.mid, o.rad))

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self._like(*T.sub(self.mid, self.rad, o.mid, o.rad))

    def __neg__(self):
        return self._like(-self.mid, self.rad)

    def scale(self, c) -> "_Stack":
        """Multiply every entry by a GenNumber or float."""
        if isinstance(c, GenNumber):
            if c.grid != self.grid:
                raise GridMismatch("operands live on different grids")
            shape = (-1,) + (1,) * self._ndim
            cm, cr = c.samples.reshape(shape), c.radius.reshape(shape)
        else:
            cm, cr = float(c), 0.0
        return self._like(*T.mul(self.mid, self.rad, cm, cr))

    def __mul__(self, c):
        if isinstance(c, (GenNumber, int, float, np.integer, np.floating)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def entry_net(self, idx) -> GenNumber:
        sl = (slice(None),) + tuple(idx)
        return GenNumber(self.grid, self.mid[sl], self.rad[sl])

    def negligible_mask(self) -> np.ndarray:
        """Per-sample, per-entry: is the entry within eps**m_cap of zero?"""
        g = self.grid
        with np.errstate(invalid="ignore"):
            low = np.abs(self.mid) - self.rad
        shape = (-1,) + (1,) * self._ndim
        lim = (-g.m_cap * g.ks).reshape(shape)
        return (low <= 0) | (_log2_abs(low) <= lim)

    def is_negligible(self) -> Verdict:
        """Every entry negligible."""
        ok = self.negligible_mask().reshape(self.grid.k_max, -1).all(axis=1)
        return _from_violations(self.grid, ~ok, self.grid.m_cap)


class GenVector(_Stack):
    """Element of the free module of rank ``n``; ``mid`` has shape ``(K, n)``."""

    __slots__ = ()
    _ndim = 1

    def __getitem__(self, i) -> GenNumber:
        return self.entry_net((i,))

    def __len__(self):
        return self.n

    def entries(self) -> List[GenNumber]:
        return [self[i] for i in range(self.n)]

    def __repr__(self):
        return f"<GenVector n={self.n} last={self.mid[-1]}>"

    @classmethod
    def from_entries(cls, entries, grid: Optional[EpsGrid] = None) -> "GenVector":
        grid = _infer_grid(entries, grid)
        nets = [_net(e, grid) for e in entries]
        mid = np.stack([x.samples for x in nets], axis=1)
        rad = np.stack([x.radius for x in nets], axis=1)
        return cls(grid, mid, rad)

    @classmethod
    def const(cls, values, grid: Optional[EpsGrid] = None) -> "GenVector":
        grid = grid or default_grid()
        v = np.asarray(values, dtype=np.float64)
        return cls(grid, np.broadcast_to(v, (grid.k_max, v.size)))

    @classmethod
    def basis(cls, i: int, n: int, grid: Optional[EpsGrid] = None) -> "GenVector":
        e = np.zeros(n)
        e[i] = 1.0
        return cls.const(e, grid)


class GenMatrix(_Stack):
    """``n x n`` matrix net; ``mid`` has shape ``(K, n, n)``.

    ``symmetric`` records whether the samples are known to be exactly
    symmetric (set by :func:`symmetrize`).
    """

    __slots__ = ("symmetric",)
    _ndim = 2

    def __init__(self, grid, mid, rad=None, symmetric=False):
        super().__init__(grid, mid, rad)
        if self.mid.shape[1] != self.mid.shape[2]:
            raise ValueError("GenMatrix must be square")
        self.symmetric = bool(symmetric)

    def _like(self, mid, rad):
        return GenMatrix(self.grid, mid, rad)

    def __getitem__(self, ij) -> GenNumber:
        return self.entry_net(ij)

    def __repr__(self):
        return f"<GenMatrix n={self.n} last=\n{self.mid[-1]}>"

    @property
    def T(self) -> "GenMatrix":
        return GenMatrix(self.grid, np.swapaxes(self.mid, 1, 2), np.swapaxes(self.rad, 1, 2), self.symmetric)

    def __matmul__(self, other):
        if isinstance(other, GenMatrix):
            if other.grid != self.grid:
                raise GridMismatch("operands live on different grids")
            return GenMatrix(self.grid, *T.matmul(self.mid, self.rad, other.mid, other.rad))
        if isinstance(other, GenVector):
            if other.grid != self.grid:
                raise GridMismatch("operands live on different grids")
            return GenVector(self.grid, *T.matvec(self.mid, self.rad, other.mid, other.rad))
        return NotImplemented

    def diagonal(self) -> GenVector:
        return GenVector(self.grid, np.diagonal(self.mid, axis1=1, axis2=2), np.diagonal(self.rad, axis1=1, axis2=2))

    def column(self, j: int) -> GenVector:
        return GenVector(self.grid, self.mid[:, :, j], self.rad[:, :, j])

    def row(self, i: int) -> GenVector:
        return GenVector(self.grid, self.mid[:, i, :], self.rad[:, i, :])

    def minor(self, k: int) -> "GenMatrix":
        """Leading principal ``k x k`` submatrix."""
        return GenMatrix(self.grid, self.mid[:, :k, :k], self.rad[:, :k, :k], self.symmetric)

    @classmethod
    def from_entries(cls, rows, grid: Optional[EpsGrid] = None) -> "GenMatrix":
        flat = [e for row in rows for e in row]
        grid = _infer_grid(flat, grid)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("GenMatrix must be square")
        nets = [[_net(e, grid) for e in row] for row in rows]
        mid = np.stack([np.stack([x.samples for x in row], axis=1) for row in nets], axis=1)
        rad = np.stack([np.stack([x.radius for x in row], axis=1) for row in nets], axis=1)
        return cls(grid, mid, rad)

    @classmethod
    def const(cls, values, grid: Optional[EpsGrid] = None) -> "GenMatrix":
        grid = grid or default_grid()
        a = np.asarray(values, dtype=np.float64)
        sym = bool(np.array_equal(a, a.T))
        return cls(grid, np.broadcast_to(a, (grid.k_max,) + a.shape), None, sym)

    @classmethod
    def identity(cls, n: int, grid: Optional[EpsGrid] = None) -> "GenMatrix":
        return cls.const(np.eye(n), grid)

    @classmethod
    def diag(cls, entries, grid: Optional[EpsGrid] = None) -> "GenMatrix":
        grid = _infer_grid(entries, grid)
        n = len(entries)
        rows = [[entries[i] if i == j else 0.0 for j in range(n)] for i in range(n)]
        m = cls.from_entries(rows, grid)
        m.symmetric = True
        return m

    @classmethod
    def from_columns(cls, cols: Sequence[GenVector]) -> "GenMatrix":
        grid = cols[0].grid
        for c in cols:
            if c.grid != grid:
                raise GridMismatch("columns live on different grids")
        return cls(grid, np.stack([c.mid for c in cols], axis=2), np.stack([c.rad for c in cols], axis=2))


def _infer_grid(entries, grid):
    for e in entries:
        if isinstance(e, GenNumber):
            if grid is not None and e.grid != grid:
                raise GridMismatch("entries live on different grids")
            return e.grid
    return grid or default_grid()


def _net(e, grid) -> GenNumber:
    if isinstance(e, GenNumber):
        if e.grid != grid:
            raise GridMismatch("entries live on different grids")
        return e
    return GenNumber(grid, np.full(grid.k_max, float(e)))


def _gn(grid, mid, rad) -> GenNumber:
    return GenNumber(grid, mid, rad)


# ------------------------------------------------------------ basic products


def dot(u: GenVector, v: GenVector) -> GenNumber:
    """Euclidean inner product."""
    _same(u, v)
    return _gn(u.grid, *T.dot(u.mid, u.rad, v.mid, v.rad))


def bilinear(g: GenMatrix, u: GenVector, v: GenVector) -> GenNumber:
    """``u^T g v``."""
    _same(g, u, v)
    return _gn(g.grid, *T.bilinear(g.mid, g.rad, u.mid, u.rad, v.mid, v.rad))


def outer(u: GenVector, v: GenVector) -> GenMatrix:
    _same(u, v)
    return GenMatrix(u.grid, *T.mul(u.mid[:, :, None], u.rad[:, :, None], v.mid[:, None, :], v.rad[:, None, :]))


def norm(v: GenVector) -> GenNumber:
    """Euclidean norm ``sqrt(sum v_i**2)``."""
    return _gn(v.grid, *T.norm(v.mid, v.rad))


def frobenius(a: GenMatrix) -> GenNumber:
    k = a.grid.k_max
    return _gn(a.grid, *T.norm(a.mid.reshape(k, -1), a.rad.reshape(k, -1)))


def _same(*xs):
    g = xs[0].grid
    for x in xs[1:]:
        if x.grid != g:
            raise GridMismatch("operands live on different grids")


# ------------------------------------------------------------ symmetrization


def _entry_verdicts(mask_ok: np.ndarray, grid: EpsGrid):
    """Worst per-entry verdict from a (K, ...) mask of acceptable samples."""
    k = grid.k_max
    flat = mask_ok.reshape(k, -1)
    worst = None
    for j in range(flat.shape[1]):
        v = _from_violations(grid, ~flat[:, j], grid.m_cap)
        if v.fails:
            return v, j
        if v.inconclusive and worst is None:
            worst = (v, j)
    return worst or (holds(grid.m_cap), None)


def symmetrize(a: GenMatrix) -> GenMatrix:
    """Symmetric representative ``(A + A^T) / 2`` of a symmetric class.

    Raises
    ------
    NotSymmetricClass
        If some entry of ``A - A^T`` is not negligible.
    """
    if a.symmetric:
        return a
    d = a - a.T
    v, j = _entry_verdicts(d.negligible_mask(), a.grid)
    if not v.holds:
        i, jj = divmod(j, a.n)
        raise NotSymmetricClass(f"entry ({i},{jj}) of A - A^T is not negligible: {v}", v)
    s = a + a.T
    mid, rad = T.mul(s.mid, s.rad, 0.5, 0.0)
    # make the stored samples exactly symmetric
    mid = np.triu(mid) + np.swapaxes(np.triu(mid, 1), 1, 2)
    rad = np.triu(rad) + np.swapaxes(np.triu(rad, 1), 1, 2)
    return GenMatrix(a.grid, mid, rad, symmetric=True)


# ------------------------------------------------------------ eigen


@dataclass(frozen=True)
class EigenResult:
    """Generalized eigen-decomposition ``U A U^T = diag(eigenvalues)``.

    ``eigenvalues`` are ordered descending per grid index; rows of ``U``
    are the eigenvectors; ``residual`` is the Frobenius norm of
    ``U A U^T - diag`` with propagated rounding radius.
    """

    eigenvalues: List[GenNumber]
    U: GenMatrix
    residual: GenNumber
    converged: bool
    rotations: np.ndarray

    def orthogonality_defect(self) -> GenMatrix:
        return self.U @ self.U.T - GenMatrix.identity(self.U.n, self.U.grid)


def gen_eigen(a: GenMatrix) -> EigenResult:
    """Per-slice cyclic Jacobi eigen-decomposition of a symmetric-class matrix.

    Eigenvalue radii combine Weyl's bound for the input radius with an a
    priori bound on Jacobi's backward error.
    """
    a = symmetrize(a)
    grid, n = a.grid, a.n
    w, V, rots, conv = kernels.jacobi_eigh(a.mid)
    order = np.argsort(-w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    U = np.swapaxes(np.take_along_axis(V, order[:, None, :], axis=2), 1, 2).copy()
    # det U = +1: flip the first row where needed
    flip = np.linalg.det(U) < 0
    U[flip, 0, :] *= -1.0
    k = grid.k_max
    a_norm = np.sqrt(np.sum(a.mid ** 2, axis=(1, 2)))
    rad_in = np.sqrt(np.sum(a.rad ** 2, axis=(1, 2)))
    rotated = rots > 0
    back = np.where(rotated, 10.0 * n * n * _EPS * a_norm, 0.0)
    lam_rad = (rad_in + back) * _SAFE
    u_rad = np.where(rotated, 10.0 * n * n * _EPS, 0.0)[:, None, None] * np.ones((k, n, n))
    lams = [GenNumber(grid, w[:, i], lam_rad) for i in range(n)]
    Um = GenMatrix(grid, U, u_rad)
    diag = GenMatrix(grid, np.einsum("ki,ij->kij", w, np.eye(n)), np.where(np.eye(n, dtype=bool), lam_rad[:, None, None], 0.0))
    resid = frobenius(Um @ a @ Um.T - diag)
    return EigenResult(lams, Um, resid, bool(conv.all()), rots)


# ------------------------------------------------------------ determinant


def _laplace_det(a: GenMatrix) -> GenNumber:
    n = a.n
    total = None
    for perm in itertools.permutations(range(n)):
        sign = _perm_sign(perm)
        m, r = a.mid[:, 0, perm[0]], a.rad[:, 0, perm[0]]
        for i in range(1, n):
            m, r = T.mul(m, r, a.mid[:, i, perm[i]], a.rad[:, i, perm[i]])
        if sign < 0:
            m = -m
        total = (m, r) if total is None else T.add(total[0], total[1], m, r)
    return _gn(a.grid, *total)


def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def det(a: GenMatrix) -> GenNumber:
    """Slice-wise determinant net.

    Laplace expansion in tracked arithmetic for ``n <= 3``; LU with partial
    pivoting for larger ``n`` with an a priori radius built from Hadamard's
    inequality.  Exactly diagonal slices use a tracked diagonal product.
    """
    n = a.n
    if n <= 3:
        return _laplace_det(a)
    mid = kernels.lu_det(a.mid)
    rows = np.sqrt(np.sum(a.mid ** 2, axis=2))  # (K, n)
    rrows = np.sqrt(np.sum(a.rad ** 2, axis=2))
    up = rows + rrows
    hprod = np.prod(up, axis=1)
    prop = np.zeros(a.grid.k_max)
    for i in range(n):
        others = np.prod(np.delete(up, i, axis=1), axis=1)
        prop += rrows[:, i] * others
    rad = (prop + 4.0 * n ** 3 * _EPS * hprod) * _SAFE
    # diagonal slices: exact product
    off = a.mid * (1 - np.eye(n))
    diag_sl = ~np.any(off != 0, axis=(1, 2)) & ~np.any(a.rad * (1 - np.eye(n)) != 0, axis=(1, 2))
    if diag_sl.any():
        dm, dr = a.mid[:, 0, 0], a.rad[:, 0, 0]
        for i in range(1, n):
            dm, dr = T.mul(dm, dr, a.mid[:, i, i], a.rad[:, i, i])
        mid = np.where(diag_sl, dm, mid)
        rad = np.where(diag_sl, dr, rad)
    return _gn(a.grid, mid, rad)


def is_nondegenerate(a: GenMatrix) -> Verdict:
    """Non-degeneracy: the determinant is invertible."""
    return is_invertible(det(a))


def det_eigen_gap(a: GenMatrix, eig: Optional[EigenResult] = None) -> GenNumber:
    """``det A - prod(eigenvalues)``, negligible for every symmetric class."""
    eig = eig or gen_eigen(a)
    p = eig.eigenvalues[0]
    for lam in eig.eigenvalues[1:]:
        p = p * lam
    return det(symmetrize(a)) - p


# ------------------------------------------------------------ inverse


def inverse(a: GenMatrix) -> GenMatrix:
    """Slice-wise inverse.

    Diagonal slices are inverted entrywise in tracked arithmetic; the rest
    go through Gauss-Jordan with a first-order perturbation radius
    ``||A^-1||^2 delta / (1 - ||A^-1|| delta)``.  Singular slices get
    midpoint 0 and infinite radius.
    """
    grid, n = a.grid, a.n
    x, ok = kernels.gj_inverse(a.mid)
    a_norm = np.sqrt(np.sum(a.mid ** 2, axis=(1, 2)))
    r_norm = np.sqrt(np.sum(a.rad ** 2, axis=(1, 2)))
    xi = np.sqrt(np.sum(x ** 2, axis=(1, 2)))
    delta = r_norm + 4.0 * n ** 3 * _EPS * a_norm
    with np.errstate(all="ignore"):
        den = 1.0 - xi * delta
        rad = np.where(den > 0.5, xi * xi * delta / den, np.inf) * _SAFE
    rad = np.where(ok, rad, np.inf)
    rad = np.broadcast_to(rad[:, None, None], x.shape).copy()
    off = ~np.eye(n, dtype=bool)
    diag_sl = ~np.any((a.mid != 0) & off, axis=(1, 2)) & ~np.any((a.rad != 0) & off, axis=(1, 2))
    if diag_sl.any():
        d = np.diagonal(a.mid, axis1=1, axis2=2)
        dr = np.diagonal(a.rad, axis1=1, axis2=2)
        q, qr = T.div(np.ones_like(d), np.zeros_like(d), d, dr)
        dx = np.einsum("ki,ij->kij", q, np.eye(n))
        dxr = np.einsum("ki,ij->kij", qr, np.eye(n))
        x = np.where(diag_sl[:, None, None], dx, x)
        rad = np.where(diag_sl[:, None, None], dxr, rad)
    sym = a.symmetric
    if sym:
        x = 0.5 * (x + np.swapaxes(x, 1, 2))
    return GenMatrix(grid, x, rad, symmetric=sym)


def solve(a: GenMatrix, b: GenVector) -> GenVector:
    return inverse(a) @ b


# ------------------------------------------------------------ index


@dataclass(frozen=True)
class MatrixIndex:
    """Numbers of strictly positive / strictly negative eigenvalues.

    ``nu_plus`` and ``nu_minus`` are ``None`` (Undefined) unless every
    eigenvalue has a definite sign.
    """

    nu_plus: Optional[int]
    nu_minus: Optional[int]
    verdict: Verdict
    eigen: Optional[EigenResult] = None

    @property
    def defined(self) -> bool:
        return self.nu_minus is not None

    @property
    def index(self) -> Optional[int]:
        return self.nu_minus

    @property
    def is_positive_definite(self) -> bool:
        return self.defined and self.nu_minus == 0

    @property
    def is_lorentzian(self) -> bool:
        return self.defined and self.nu_minus == 1 and self.nu_plus == len(self.eigen.eigenvalues) - 1

    def to_dict(self) -> dict:
        return {"nu_plus": self.nu_plus, "nu_minus": self.nu_minus, "verdict": self.verdict.to_dict()}


def eigen_nondegenerate(eig: EigenResult) -> Verdict:
    """Non-degeneracy of a symmetric class from its eigenvalues.

    Holds when every eigenvalue is invertible, with the sum of their
    exponents as certificate for ``det``; otherwise the verdict of the
    first eigenvalue that is not.
    """
    total = 0
    for i, lam in enumerate(eig.eigenvalues):
        v = is_invertible(lam)
        if not v.holds:
            return Verdict(v.status, None, v.witnesses, f"eigenvalue {i} not invertible")
        total += v.exponent
    return holds(total)


def matrix_index(a: GenMatrix) -> MatrixIndex:
    """Index of a symmetric-class, non-degenerate matrix.

    Non-degeneracy is decided eigenvalue by eigenvalue (``det`` is
    invertible iff every eigenvalue is).  Each eigenvalue carries its own
    radius, which resolves products of small eigenvalues that the a priori
    radius of :func:`det` cannot.

    Raises
    ------
    Degenerate
        If some eigenvalue is definitely not invertible (Fails).
    """
    a = symmetrize(a)
    eig = gen_eigen(a)
    nd = eigen_nondegenerate(eig)
    if nd.fails:
        raise Degenerate(f"matrix is degenerate: {nd}", nd)
    plus = minus = 0
    exps = []
    for i, lam in enumerate(eig.eigenvalues):
        p = is_strictly_positive(lam)
        if p.holds:
            plus += 1
            exps.append(p.exponent)
            continue
        q = is_strictly_negative(lam)
        if q.holds:
            minus += 1
            exps.append(q.exponent)
            continue
        status = Status.FAILS if (p.fails and q.fails) else Status.INCONCLUSIVE
        wit = tuple(sorted(set(p.witnesses) | set(q.witnesses)))
        v = Verdict(status, None, wit, f"eigenvalue {i} has no definite sign")
        return MatrixIndex(None, None, v, eig)
    return MatrixIndex(plus, minus, holds(max(exps)), eig)


def principal_minor_test(a: GenMatrix) -> Verdict:
    """Positive definiteness via strictly positive leading principal minors."""
    a = symmetrize(a)
    worst = None
    exps = []
    for k in range(1, a.n + 1):
        v = is_strictly_positive(det(a.minor(k)))
        if v.holds:
            exps.append(v.exponent)
            continue
        v = Verdict(v.status, None, v.witnesses, f"minor {k} not strictly positive")
        if v.fails:
            return v
        worst = worst or v
    if worst is not None:
        return worst
    idx = matrix_index(a)
    check = "index cross-check ok" if idx.nu_minus == 0 else f"index cross-check mismatch: {idx.nu_minus}"
    return holds(max(exps), check)


# ------------------------------------------------------------ freeness


def is_free(v: GenVector) -> Verdict:
    """Freeness: the Euclidean norm is strictly positive."""
    return is_strictly_positive(norm(v))


def max_abs(v: GenVector) -> GenNumber:
    """``max_i |v_i|`` with a radius certifying ``max_i(|v_i| - r_i)`` from below."""
    a = np.abs(v.mid)
    m = np.max(a, axis=1)
    with np.errstate(invalid="ignore"):
        low = np.max(a - v.rad, axis=1)
    return GenNumber(v.grid, m, np.maximum(m - low, 0.0))


def is_free_max(v: GenVector) -> Verdict:
    """Freeness via the componentwise maximum being strictly nonzero."""
    return is_strictly_nonzero(max_abs(v))


def extend_to_basis(v: GenVector) -> List[GenVector]:
    """Extend a free vector to a basis ``{v, A e_2, ..., A e_n}``.

    ``A`` swaps coordinate 1 with the coordinate ``i(eps)`` of largest
    magnitude (smallest index on ties), chosen slice by slice.

    Raises
    ------
    NotFree
    """
    grid, n = v.grid, v.n
    idx = np.argmax(np.abs(v.mid), axis=1)
    k = np.arange(grid.k_max)
    lead = GenNumber(grid, v.mid[k, idx], v.rad[k, idx])
    verdict = is_strictly_nonzero(lead)
    if not verdict.holds:
        raise NotFree(f"vector is not free: {verdict}", verdict)
    out = [v]
    for j in range(1, n):
        # A e_j = e_j unless j == i(eps), where it is e_1
        target = np.where(idx == j, 0, j)
        mid = np.zeros((grid.k_max, n))
        mid[k, target] = 1.0
        out.append(GenVector(grid, mid))
    return out


def coordinate_matrix(vectors: Sequence[GenVector]) -> GenMatrix:
    """Matrix whose columns are the given vectors."""
    return GenMatrix.from_columns(list(vectors))


def is_basis(vectors: Sequence[GenVector]) -> Verdict:
    return is_nondegenerate(coordinate_matrix(vectors))


def idempotent_partition(n: int, grid: Optional[EpsGrid] = None) -> List[GenNumber]:
    """``lambda_i = chi(k = i mod n)``, a partition of 1 into idempotents."""
    grid = grid or default_grid()
    return [chi(IndexSet.ap(i if i > 0 else n, n), grid) for i in range(1, n + 1)]


def partition_vector(n: int, grid: Optional[EpsGrid] = None):
    """Free vector built from an idempotent partition, and its basis matrix.

    ``v = sum_i s_i lambda_i e_i`` with signs ``s_i = (-1)**((i+1)(n+1))``.
    No single coordinate of ``v`` is invertible, yet ``v`` is free.  The
    matrix has columns ``v`` and ``v_j = sum_k lambda_{g^(j-1)(k)} e_k``
    (``j >= 2``) where ``g`` is the cyclic permutation ``k -> k - 1 (mod n)``;
    its determinant is ``sum_l lambda_l = 1``.
    """
    grid = grid or default_grid()
    lam = idempotent_partition(n, grid)
    signs = [(-1.0) ** ((i + 1) * (n + 1)) for i in range(1, n + 1)]
    v = GenVector.from_entries([signs[i] * lam[i] for i in range(n)], grid)
    cols = [v]
    for j in range(2, n + 1):
        # g^(j-1)(k) = k - (j-1), 1-based and cyclic
        cols.append(GenVector.from_entries([lam[(k - (j - 1)) % n] for k in range(n)], grid))
    return v, coordinate_matrix(cols)


def steinitz_exchange(basis: Sequence[GenVector], w: GenVector, j: int) -> List[GenVector]:
    """Replace ``basis[j]`` (0-based) by ``w`` when ``w``'s ``j``-th coefficient
    is strictly nonzero.

    Raises
    ------
    CoefficientNotStrictlyNonzero
    """
    b = coordinate_matrix(basis)
    lam = solve(b, w)
    v = is_strictly_nonzero(lam[j])
    if not v.holds:
        raise CoefficientNotStrictlyNonzero(f"coefficient {j} of w is not strictly nonzero: {v}", v)
    out = list(basis)
    out[j] = w
    return out


# ------------------------------------------------------------ projection


def _columns(vectors: Sequence[GenVector]):
    """Stacked ``(K, n, m)`` midpoints and radii of possibly non-square column sets."""
    _same(*vectors)
    return np.stack([c.mid for c in vectors], axis=2), np.stack([c.rad for c in vectors], axis=2)


def gram_matrix(h: GenMatrix, vectors: Sequence[GenVector]) -> GenMatrix:
    """``G_ij = h(b_i, b_j)`` for the given vectors."""
    b, rb = _columns(vectors)
    hb, rhb = T.matmul(h.mid, h.rad, b, rb)
    bt, rbt = np.swapaxes(b, 1, 2), np.swapaxes(rb, 1, 2)
    g, rg = T.matmul(bt, rbt, hb, rhb)
    return GenMatrix(h.grid, g, rg)


def orthonormalize(m_basis: Sequence[GenVector], h: GenMatrix) -> List[GenVector]:
    """Modified Gram-Schmidt (with a reorthogonalization pass) under ``h``.

    Raises
    ------
    DegenerateGram
        If ``h`` is not positive definite or the Gram matrix of the basis is
        degenerate.
    """
    h = symmetrize(h)
    pd = principal_minor_test(h)
    if not pd.holds:
        raise DegenerateGram(f"inner product is not positive definite: {pd}", pd)
    gram = gram_matrix(h, m_basis)
    nd = is_nondegenerate(gram)
    if not nd.holds:
        raise DegenerateGram(f"Gram matrix is degenerate: {nd}", nd)
    bm, br = _columns(m_basis)
    q, rdiag = kernels.mgs(h.mid, bm)
    m = len(m_basis)
    # a priori radius: basis radius and Gram-Schmidt backward error,
    # amplified by the conditioning of the triangular factor
    with np.errstate(all="ignore"):
        hn = np.sqrt(np.sum(h.mid ** 2, axis=(1, 2)))
        bn = np.sqrt(np.sum(bm ** 2, axis=(1, 2)))
        rmin = np.min(np.where(rdiag > 0, rdiag, np.nan), axis=1)
        rad_b = np.sqrt(np.sum(br ** 2, axis=(1, 2))) + np.sqrt(np.sum(h.rad ** 2, axis=(1, 2))) * bn
        scale = np.sqrt(hn) * bn / rmin
        qrad = (rad_b / rmin + 20.0 * bm.shape[1] * m * _EPS) * (1.0 + scale) * scale * 4.0
    qrad = np.where(np.isfinite(qrad), qrad, np.inf)
    return [GenVector(h.grid, q[:, :, i], np.broadcast_to(qrad[:, None], q[:, :, i].shape)) for i in range(m)]


def orthogonal_project(m_basis: Sequence[GenVector], h: GenMatrix, v: GenVector) -> GenVector:
    """Projection of ``v`` onto ``span(m_basis)`` along its ``h``-orthogonal complement."""
    qs = orthonormalize(m_basis, h)
    h = symmetrize(h)
    out = None
    for q in qs:
        c = bilinear(h, v, q)
        term = q.scale(c)
        out = term if out is None else out + term
    return out


def orthogonal_decomposition(m_basis: Sequence[GenVector], h: GenMatrix, v: GenVector):
    """``v = p + w`` with ``p`` in ``span(m_basis)`` and ``w`` h-orthogonal to it."""
    p = orthogonal_project(m_basis, h, v)
    return p, v - p

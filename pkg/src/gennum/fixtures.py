"""Named example nets and seeded random generators.

The worked examples (zero-divisor pairs, the alternating diagonalizer, the
failing Cauchy-Schwarz pair) are used by the demos and the tests; the
random generators build corpora of power-law nets, symmetric matrices,
Lorentzian metrics and time-like vectors for property checks and
benchmarks.  Every generator takes a ``numpy.random.Generator`` so corpora
are reproducible.
"""

import math
from typing import List, Optional, Tuple

import numpy as np

from .causal import BilinearForm, normalize
from .gen_linalg import GenMatrix, GenVector, partition_vector
from .gen_num import EpsGrid, GenNumber, IndexSet, chi, default_grid, eps_net, make_gen

# ------------------------------------------------------------------ examples


def cd_pair(grid: Optional[EpsGrid] = None) -> Tuple[GenNumber, GenNumber]:
    """Incomparable idempotents ``c = chi(even)`` and ``d = 1 - c``."""
    grid = grid or default_grid()
    c = chi(IndexSet.even(), grid)
    return c, 1.0 - c


def csex_vectors(n: int = 4, grid: Optional[EpsGrid] = None):
    """``u = e_1`` and ``v = e_1 + lam * eps * e_2`` with ``lam = chi(even)``."""
    grid = grid or default_grid()
    lam = chi(IndexSet.even(), grid)
    alpha = eps_net(grid)
    u = GenVector.basis(0, n, grid)
    entries = [1.0, lam * alpha] + [0.0] * (n - 2)
    return u, GenVector.from_entries(entries, grid), lam, alpha


def mixing_matrix(grid: Optional[EpsGrid] = None) -> GenMatrix:
    """``A_eps = U_eps D U_eps^T`` with ``D = diag(1, -1)`` and ``U_eps`` alternating
    between the identity (even k) and rotation by pi/2 (odd k)."""
    grid = grid or default_grid()
    mats = np.empty((grid.k_max, 2, 2))
    for i, k in enumerate(grid.ks.tolist()):
        mats[i] = np.diag([1.0, -1.0]) if k % 2 == 0 else np.diag([-1.0, 1.0])
    return GenMatrix(grid, mats)


def negligible_net(grid: Optional[EpsGrid] = None) -> GenNumber:
    """``exp(-1/eps)``."""
    return make_gen(lambda e: math.exp(-1.0 / e), grid or default_grid(), "exp(-1/eps)")


# ------------------------------------------------------------------ random


def power_law_net(rng: np.random.Generator, grid: EpsGrid, orders=(0, 1, 2), min_order: Optional[int] = None) -> GenNumber:
    """``sum_m c_m eps**m`` over ``orders`` with random coefficients.

    When ``min_order`` is given the coefficient of that order is bounded
    away from zero, so the net is of exact order ``min_order``.
    """
    cs = rng.uniform(-1.0, 1.0, size=len(orders))
    if min_order is not None:
        i = list(orders).index(min_order)
        cs[i] = math.copysign(rng.uniform(0.5, 1.5), cs[i])
    cs = [float(c) for c in cs]
    ms = [int(m) for m in orders]

    def f(e):
        s = 0.0
        for c, m in zip(cs, ms):
            s += c * e ** m
        return s

    return make_gen(f, grid)


def _net_stack(rng, grid, shape, orders) -> np.ndarray:
    """Samples of independent power-law nets, shape ``(K,) + shape``."""
    eps = grid.eps
    cs = rng.uniform(-1.0, 1.0, size=(len(orders),) + shape)
    out = np.zeros((grid.k_max,) + shape)
    for c, m in zip(cs, orders):
        out = out + c[None] * (eps ** m).reshape((-1,) + (1,) * len(shape))
    return out


def random_symmetric(rng: np.random.Generator, n: int, grid: EpsGrid, orders=(0, 1, 2)) -> GenMatrix:
    """Symmetric matrix with power-law entries."""
    a = _net_stack(rng, grid, (n, n), orders)
    a = np.triu(a) + np.swapaxes(np.triu(a, 1), 1, 2)
    return GenMatrix(grid, a, symmetric=True)


def random_negligible(rng: np.random.Generator, n: int, grid: EpsGrid) -> GenMatrix:
    """Non-symmetric perturbation with entries ``r * eps**(m_cap + 1)``, ``|r| <= 1``."""
    r = rng.uniform(-1.0, 1.0, size=(n, n))
    scale = np.ldexp(1.0, -(grid.m_cap + 1) * grid.ks)
    return GenMatrix(grid, scale[:, None, None] * r[None])


def random_invertible(rng: np.random.Generator, n: int, grid: EpsGrid) -> GenMatrix:
    """``M = Q (I + 0.3 R0) + eps R1``: well conditioned on every slice."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    m0 = q @ (np.eye(n) + 0.3 * rng.uniform(-1, 1, size=(n, n)) / n)
    m1 = rng.uniform(-1, 1, size=(n, n))
    return GenMatrix(grid, m0[None] + grid.eps[:, None, None] * m1[None])


def random_signature_matrix(rng: np.random.Generator, n: int, n_neg: int, grid: EpsGrid,
                            max_order: int = 1) -> GenMatrix:
    """Symmetric ``Q^T D Q`` with ``n_neg`` negative eigenvalues of size ``eps**m``, ``m <= max_order``.

    Eigenvalues much below ``1e-14 * ||A||`` cannot be told apart from
    rounding once the entries are mixed by ``Q``, so the default keeps
    ``m <= 1``, which stays resolvable up to ``k_max = 40``.
    """
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    signs = np.array([-1.0] * n_neg + [1.0] * (n - n_neg))
    rng.shuffle(signs)
    orders = rng.integers(0, max_order + 1, size=n)
    mags = rng.uniform(0.5, 2.0, size=n)
    d = signs * mags * grid.eps[:, None] ** orders[None]
    a = np.einsum("ji,kj,jl->kil", q, d, q)
    a = 0.5 * (a + np.swapaxes(a, 1, 2))
    return GenMatrix(grid, a, symmetric=True)


class LorentzianSample:
    """Random metric ``g = M^T eta M`` with its frame ``M`` (``M = M0 + eps M1``).

    Vectors are drawn in the orthonormal frame and mapped back with
    ``M^{-1}``, so their causal character is known exactly.
    """

    def __init__(self, rng: np.random.Generator, n: int, grid: EpsGrid):
        self.grid = grid
        self.n = n
        self.rng = rng
        self.M = random_invertible(rng, n, grid).mid
        self.eta = np.diag([-1.0] + [1.0] * (n - 1))
        g = np.einsum("kji,jl,klm->kim", self.M, self.eta, self.M)
        g = 0.5 * (g + np.swapaxes(g, 1, 2))
        self.Minv = np.linalg.inv(self.M)
        self.form = BilinearForm.from_matrix(GenMatrix(grid, g, symmetric=True))

    def from_frame(self, coords: np.ndarray) -> GenVector:
        """Vector whose frame components per slice are ``coords`` (shape ``(K, n)``)."""
        return GenVector(self.grid, np.einsum("kij,kj->ki", self.Minv, coords))

    def timelike(self, order: Optional[int] = None, unit: bool = False) -> GenVector:
        """Future-directed time-like vector ``(t, x)`` in the frame, ``|x| <= 0.9 t``.

        ``t`` is ``t0 * eps**order`` with ``order`` drawn from 0..2 unless
        given; ``unit`` forces ``t**2 - |x|**2 = 1``.
        """
        rng, n = self.rng, self.n
        d = rng.normal(size=n - 1)
        d /= np.linalg.norm(d)
        frac = rng.uniform(0.0, 0.9)
        if unit:
            coords = np.concatenate([np.ones((self.grid.k_max, 1)), np.broadcast_to(frac * d, (self.grid.k_max, n - 1))], axis=1)
            # rescale in tracked arithmetic so g(u, u) = -1 up to the radius
            return normalize(self.form, self.from_frame(coords))
        if order is None:
            order = int(rng.integers(0, 3))
        t0 = rng.uniform(0.5, 2.0)
        t = t0 * self.grid.eps ** order
        coords = np.concatenate([t[:, None], (frac * t)[:, None] * d[None]], axis=1)
        return self.from_frame(coords)

    def unit_timelike(self) -> GenVector:
        return self.timelike(unit=True)


def random_free_vector(rng: np.random.Generator, n: int, grid: EpsGrid, max_order: int = 3) -> GenVector:
    """Vector with power-law entries, one of which has exact order <= ``max_order``."""
    entries = []
    lead = int(rng.integers(0, n))
    for i in range(n):
        if i == lead:
            m = int(rng.integers(0, max_order + 1))
            entries.append(power_law_net(rng, grid, orders=(m, m + 1), min_order=m))
        else:
            entries.append(power_law_net(rng, grid, orders=(0, 1, 2)))
    return GenVector.from_entries(entries, grid)


_INDEX_SETS = [
    IndexSet.even(),
    IndexSet.odd(),
    IndexSet.ap(1, 3),
    IndexSet.ap(2, 3),
    IndexSet.pow2(),
    IndexSet.all(),
]


def freeness_corpus(rng: np.random.Generator, grid: EpsGrid, size: int = 300, max_order: int = 20) -> List[GenVector]:
    """Mixed corpus of power-law, chi-type and idempotent-partition vectors.

    Power-law exponents stay at or below ``max_order`` so that freeness
    never hinges on the exponent cap.
    """
    out = []
    eps = grid.eps
    while len(out) < size:
        kind = len(out) % 3
        n = int(rng.integers(2, 5))
        if kind == 0:
            mid = np.zeros((grid.k_max, n))
            for i in range(n):
                if rng.random() < 0.3:
                    continue  # zero entry
                m = int(rng.integers(0, max_order + 1))
                mid[:, i] = rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]) * eps ** m
            out.append(GenVector(grid, mid))
        elif kind == 1:
            mid = np.zeros((grid.k_max, n))
            for i in range(n):
                s = _INDEX_SETS[int(rng.integers(0, len(_INDEX_SETS)))]
                if rng.random() < 0.2:
                    continue
                m = int(rng.integers(0, 4))
                mid[:, i] = s.mask(grid) * rng.uniform(0.5, 2.0) * eps ** m
            out.append(GenVector(grid, mid))
        else:
            v, _ = partition_vector(n, grid)
            keep = rng.random(n) < 0.75
            out.append(GenVector(grid, v.mid * keep[None, :]))
    return out

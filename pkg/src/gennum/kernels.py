"""Batched per-epsilon linear-algebra kernels.

Each kernel works on a stack of small dense matrices, one per grid index,
and exists twice: a numba ``@njit`` version that loops over the batch, and
a pure-numpy version that vectorizes the same loop across the batch with
the same floating-point operation order.

The public names (``jacobi_eigh``, ``lu_det``, ``gj_inverse``, ``mgs``)
dispatch to numba unless numba is missing or ``GENNUM_NUMBA=0`` is set in
the environment when the module is imported.
"""

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda f: f


USE_NUMBA = HAVE_NUMBA and os.environ.get("GENNUM_NUMBA", "1").strip().lower() not in (
    "0",
    "false",
    "no",
    "off",
)

JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 30
_THETA_BIG = 1e150


# ---------------------------------------------------------------- numba side


@njit(cache=True)
def _jacobi_one(a, v, tol, max_sweeps):
    n = a.shape[0]
    norm_a = 0.0
    for i in range(n):
        for j in range(n):
            norm_a += a[i, j] * a[i, j]
    norm_a = np.sqrt(norm_a)
    rotations = 0
    converged = False
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n):
            for j in range(n):
                if i != j:
                    off += a[i, j] * a[i, j]
        if np.sqrt(off) <= tol * norm_a:
            converged = True
            break
        if sweep == max_sweeps:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                g = 100.0 * abs(apq)
                if sweep > 3 and abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > _THETA_BIG:
                    t = 0.5 / theta
                else:
                    sgn = 1.0 if theta >= 0.0 else -1.0
                    t = sgn / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
                rotations += 1
    return rotations, converged


@njit(cache=True)
def jacobi_eigh_numba(mats, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    b, n, _ = mats.shape
    w = np.empty((b, n))
    vecs = np.empty((b, n, n))
    rots = np.empty(b, dtype=np.int64)
    conv = np.empty(b, dtype=np.bool_)
    for i in range(b):
        a = mats[i].copy()
        v = np.eye(n)
        r, c = _jacobi_one(a, v, tol, max_sweeps)
        for j in range(n):
            w[i, j] = a[j, j]
        vecs[i] = v
        rots[i] = r
        conv[i] = c
    return w, vecs, rots, conv


@njit(cache=True)
def lu_det_numba(mats):
    b, n, _ = mats.shape
    out = np.empty(b)
    for i in range(b):
        a = mats[i].copy()
        sign = 1.0
        singular = False
        for j in range(n):
            piv = j
            best = abs(a[j, j])
            for r in range(j + 1, n):
                if abs(a[r, j]) > best:
                    best = abs(a[r, j])
                    piv = r
            if best == 0.0:
                singular = True
                break
            if piv != j:
                for c in range(n):
                    tmp = a[j, c]
                    a[j, c] = a[piv, c]
                    a[piv, c] = tmp
                sign = -sign
            for r in range(j + 1, n):
                f = a[r, j] / a[j, j]
                for c in range(j, n):
                    a[r, c] = a[r, c] - f * a[j, c]
        if singular:
            out[i] = 0.0
        else:
            d = sign
            for j in range(n):
                d = d * a[j, j]
            out[i] = d
    return out


@njit(cache=True)
def gj_inverse_numba(mats):
    b, n, _ = mats.shape
    out = np.empty((b, n, n))
    ok = np.empty(b, dtype=np.bool_)
    for i in range(b):
        a = mats[i].copy()
        x = np.eye(n)
        good = True
        for j in range(n):
            piv = j
            best = abs(a[j, j])
            for r in range(j + 1, n):
                if abs(a[r, j]) > best:
                    best = abs(a[r, j])
                    piv = r
            if best == 0.0:
                good = False
                break
            if piv != j:
                for c in range(n):
                    tmp = a[j, c]
                    a[j, c] = a[piv, c]
                    a[piv, c] = tmp
                    tmp = x[j, c]
                    x[j, c] = x[piv, c]
                    x[piv, c] = tmp
            d = a[j, j]
            for c in range(n):
                a[j, c] = a[j, c] / d
                x[j, c] = x[j, c] / d
            for r in range(n):
                if r != j:
                    f = a[r, j]
                    for c in range(n):
                        a[r, c] = a[r, c] - f * a[j, c]
                        x[r, c] = x[r, c] - f * x[j, c]
        ok[i] = good
        if good:
            out[i] = x
        else:
            out[i] = 0.0
    return out, ok


@njit(cache=True)
def _hdot(h, x, y):
    n = x.shape[0]
    s = 0.0
    for r in range(n):
        t = 0.0
        for c in range(n):
            t += h[r, c] * y[c]
        s += x[r] * t
    return s


@njit(cache=True)
def mgs_numba(hs, bases):
    """Modified Gram-Schmidt with one reorthogonalization pass.

    ``hs``: (B, n, n) inner products, ``bases``: (B, n, m) columns.
    Returns orthonormal columns and the diagonal of R.
    """
    nb, n, m = bases.shape
    q = np.zeros((nb, n, m))
    rdiag = np.zeros((nb, m))
    for i in range(nb):
        h = hs[i]
        for j in range(m):
            v = bases[i, :, j].copy()
            for _pass in range(2):
                for l in range(j):
                    c = _hdot(h, q[i, :, l], v)
                    for r in range(n):
                        v[r] = v[r] - c * q[i, r, l]
            nv = _hdot(h, v, v)
            if nv > 0.0:
                nrm = np.sqrt(nv)
                rdiag[i, j] = nrm
                for r in range(n):
                    q[i, r, j] = v[r] / nrm
    return q, rdiag


# ---------------------------------------------------------------- numpy side


def jacobi_eigh_numpy(mats, tol=JACOBI_TOL, max_sweeps=JACOBI_MAX_SWEEPS):
    a = np.array(mats, dtype=np.float64, copy=True)
    b, n, _ = a.shape
    v = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    norm_a = np.sqrt(np.sum(a * a, axis=(1, 2)))
    rots = np.zeros(b, dtype=np.int64)
    conv = np.zeros(b, dtype=bool)
    offmask = ~np.eye(n, dtype=bool)
    active = np.ones(b, dtype=bool)
    for sweep in range(max_sweeps + 1):
        off = np.sqrt(np.sum(np.where(offmask, a * a, 0.0), axis=(1, 2)))
        done = active & (off <= tol * norm_a)
        conv |= done
        active &= ~done
        if sweep == max_sweeps or not active.any():
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                app = a[:, p, p]
                aqq = a[:, q, q]
                g = 100.0 * np.abs(apq)
                skip = np.zeros(b, dtype=bool)
                if sweep > 3:
                    skip = (np.abs(app) + g == np.abs(app)) & (np.abs(aqq) + g == np.abs(aqq))
                zero_it = active & (apq != 0.0) & skip
                rot = active & (apq != 0.0) & ~skip
                a[zero_it, p, q] = 0.0
                a[zero_it, q, p] = 0.0
                if not rot.any():
                    continue
                with np.errstate(all="ignore"):
                    theta = (aqq - app) / (2.0 * np.where(rot, apq, 1.0))
                    sgn = np.where(theta >= 0.0, 1.0, -1.0)
                    t = np.where(
                        np.abs(theta) > _THETA_BIG,
                        0.5 / theta,
                        sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0)),
                    )
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                c = np.where(rot, c, 1.0)[:, None]
                s = np.where(rot, s, 0.0)[:, None]
                r = rot[:, None]
                akp = a[:, :, p].copy()
                akq = a[:, :, q].copy()
                a[:, :, p] = np.where(r, c * akp - s * akq, akp)
                a[:, :, q] = np.where(r, s * akp + c * akq, akq)
                apk = a[:, p, :].copy()
                aqk = a[:, q, :].copy()
                a[:, p, :] = np.where(r, c * apk - s * aqk, apk)
                a[:, q, :] = np.where(r, s * apk + c * aqk, aqk)
                a[rot, p, q] = 0.0
                a[rot, q, p] = 0.0
                vkp = v[:, :, p].copy()
                vkq = v[:, :, q].copy()
                v[:, :, p] = np.where(r, c * vkp - s * vkq, vkp)
                v[:, :, q] = np.where(r, s * vkp + c * vkq, vkq)
                rots += rot
    w = np.diagonal(a, axis1=1, axis2=2).copy()
    return w, v, rots, conv


def lu_det_numpy(mats):
    a = np.array(mats, dtype=np.float64, copy=True)
    b, n, _ = a.shape
    idx = np.arange(b)
    sign = np.ones(b)
    singular = np.zeros(b, dtype=bool)
    for j in range(n):
        col = np.abs(a[:, j:, j])
        piv = j + np.argmax(col, axis=1)
        best = col[idx, piv - j]
        singular |= best == 0.0
        swap = (piv != j) & ~singular
        rows_j = a[idx, j, :].copy()
        rows_p = a[idx, piv, :].copy()
        a[idx, j, :] = np.where(swap[:, None], rows_p, rows_j)
        a[idx, piv, :] = np.where(swap[:, None], rows_j, rows_p)
        sign = np.where(swap, -sign, sign)
        d = np.where(singular, 1.0, a[:, j, j])
        for r in range(j + 1, n):
            f = a[:, r, j] / d
            f = np.where(singular, 0.0, f)
            a[:, r, j:] = a[:, r, j:] - f[:, None] * a[:, j, j:]
    det = sign.copy()
    for j in range(n):
        det = det * a[:, j, j]
    return np.where(singular, 0.0, det)


def gj_inverse_numpy(mats):
    a = np.array(mats, dtype=np.float64, copy=True)
    b, n, _ = a.shape
    idx = np.arange(b)
    x = np.broadcast_to(np.eye(n), (b, n, n)).copy()
    bad = np.zeros(b, dtype=bool)
    for j in range(n):
        col = np.abs(a[:, j:, j])
        piv = j + np.argmax(col, axis=1)
        best = col[idx, piv - j]
        bad |= best == 0.0
        swap = (piv != j) & ~bad
        for m in (a, x):
            rj = m[idx, j, :].copy()
            rp = m[idx, piv, :].copy()
            m[idx, j, :] = np.where(swap[:, None], rp, rj)
            m[idx, piv, :] = np.where(swap[:, None], rj, rp)
        d = np.where(bad, 1.0, a[:, j, j])[:, None]
        a[:, j, :] = a[:, j, :] / d
        x[:, j, :] = x[:, j, :] / d
        for r in range(n):
            if r != j:
                f = np.where(bad, 0.0, a[:, r, j])[:, None]
                a[:, r, :] = a[:, r, :] - f * a[:, j, :]
                x[:, r, :] = x[:, r, :] - f * x[:, j, :]
    x[bad] = 0.0
    return x, ~bad


def _hdot_numpy(h, x, y):
    n = x.shape[1]
    s = np.zeros(x.shape[0])
    for r in range(n):
        t = np.zeros(x.shape[0])
        for c in range(n):
            t = t + h[:, r, c] * y[:, c]
        s = s + x[:, r] * t
    return s


def mgs_numpy(hs, bases):
    hs = np.asarray(hs, dtype=np.float64)
    bases = np.asarray(bases, dtype=np.float64)
    nb, n, m = bases.shape
    q = np.zeros((nb, n, m))
    rdiag = np.zeros((nb, m))
    for j in range(m):
        v = bases[:, :, j].copy()
        for _pass in range(2):
            for l in range(j):
                c = _hdot_numpy(hs, q[:, :, l], v)
                v = v - c[:, None] * q[:, :, l]
        nv = _hdot_numpy(hs, v, v)
        pos = nv > 0.0
        nrm = np.sqrt(np.where(pos, nv, 1.0))
        rdiag[:, j] = np.where(pos, nrm, 0.0)
        q[:, :, j] = np.where(pos[:, None], v / nrm[:, None], 0.0)
    return q, rdiag


# ---------------------------------------------------------------- dispatch

BACKENDS = {
    "numba": {
        "jacobi_eigh": jacobi_eigh_numba,
        "lu_det": lu_det_numba,
        "gj_inverse": gj_inverse_numba,
        "mgs": mgs_numba,
    },
    "numpy": {
        "jacobi_eigh": jacobi_eigh_numpy,
        "lu_det": lu_det_numpy,
        "gj_inverse": gj_inverse_numpy,
        "mgs": mgs_numpy,
    },
}

BACKEND = "numba" if USE_NUMBA else "numpy"


def _c(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def jacobi_eigh(mats):
    """Eigen-decompose a stack of symmetric matrices.

    Returns ``(w, V, rotations, converged)`` with ``mats[i] = V[i] @ diag(w[i]) @ V[i].T``
    (columns of ``V`` are eigenvectors, unsorted).
    """
    return BACKENDS[BACKEND]["jacobi_eigh"](_c(mats))


def lu_det(mats):
    """Determinants by LU with partial pivoting."""
    return BACKENDS[BACKEND]["lu_det"](_c(mats))


def gj_inverse(mats):
    """Inverses by Gauss-Jordan elimination; returns ``(inv, ok)``."""
    return BACKENDS[BACKEND]["gj_inverse"](_c(mats))


def mgs(hs, bases):
    """Orthonormalize columns of ``bases`` under the inner products ``hs``."""
    return BACKENDS[BACKEND]["mgs"](_c(hs), _c(bases))


def warmup():
    """Trigger JIT compilation so later timings exclude it."""
    if BACKEND != "numba":
        return
    m = np.eye(2)[None] * 2.0
    jacobi_eigh(m + np.array([[[0.0, 1.0], [1.0, 0.0]]]))
    lu_det(m)
    gj_inverse(m)
    mgs(m, m)

"""Midpoint-radius arithmetic on float64 sample arrays.

A tracked value is a pair ``(mid, rad)``: the computed float and an upper
bound on its distance to the exact real the computation stands for.  Sums
and products use error-free transformations, so ``rad`` stays exactly zero
for as long as every floating-point step is exact.  This is what lets
negligibility (|x| <= eps**40, far below double rounding) be decided on
computed quantities: a sample counts as zero when ``|mid| <= rad``.

All functions accept arrays of any broadcastable shape.
"""

import math

import numpy as np

U = 2.0 ** -53  # unit roundoff
EPS = 2.0 ** -52  # machine epsilon
TINY = 2.0 ** -1074  # smallest subnormal
_SPLIT = 134217729.0  # 2**27 + 1, Dekker split constant
_SAFE = 1.0 + 4.0 * U  # inflation applied to every computed radius
_SPLIT_MAX = 2.0 ** 996  # beyond this the split overflows
_UNDERFLOW = 2.0 ** -969  # below this products may lose low bits


def _fix(rad):
    """Replace NaN radii (inf * 0) by inf: nothing is known there."""
    rad = np.asarray(rad, dtype=np.float64)
    return np.where(np.isnan(rad), np.inf, rad)


def two_sum(a, b):
    """Knuth's TwoSum: ``s = fl(a + b)`` and the exact error ``a + b - s``."""
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


def _split(a):
    c = _SPLIT * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    """Dekker's TwoProduct: ``p = fl(a * b)`` and the signed error ``a*b - p``.

    Where the split would overflow or the product is in the gradual
    underflow range the error is replaced by a safe magnitude bound.
    """
    with np.errstate(all="ignore"):
        p = a * b
        ah, al = _split(a)
        bh, bl = _split(b)
        err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
        big = (np.abs(a) > _SPLIT_MAX) | (np.abs(b) > _SPLIT_MAX)
        small = (np.abs(p) < _UNDERFLOW) & (p != 0)
        exact_zero = (a == 0) | (b == 0)
        crude = U * np.abs(p) + TINY
        err = np.where(big | (small & ~exact_zero), crude, err)
        err = np.where(np.isfinite(err), err, np.inf)
    return p, err


def add(a, ra, b, rb):
    s, e = two_sum(a, b)
    with np.errstate(all="ignore"):
        rad = (ra + rb + np.abs(e)) * _SAFE
    return s, _fix(rad)


def sub(a, ra, b, rb):
    return add(a, ra, -b, rb)


def mul(a, ra, b, rb):
    p, e = two_prod(a, b)
    with np.errstate(all="ignore"):
        rad = (np.abs(a) * rb + np.abs(b) * ra + ra * rb + np.abs(e)) * _SAFE
    return p, _fix(rad)


def div(a, ra, b, rb):
    """Quotient ``a / b``; samples with ``b == 0`` get quotient 0 and radius inf."""
    with np.errstate(all="ignore"):
        zero = b == 0
        bs = np.where(zero, 1.0, b)
        q = a / bs
        p, e = two_prod(q, bs)
        resid = np.abs(((a - p) - e) / bs) * _SAFE  # rounding of the quotient
        denom = np.abs(bs) - rb
        prop = np.where(denom > 0, (ra + np.abs(q) * rb) / denom, np.inf)
        prop = np.where((ra == 0) & (rb == 0), 0.0, prop)
        rad = (resid + prop) * _SAFE
        q = np.where(zero, 0.0, q)
        rad = np.where(zero, np.inf, rad)
    return q, _fix(rad)


def sqrt_abs(a, ra):
    """Square root of ``|a|``; the radius bounds the distance to sqrt of the exact |a|."""
    x = np.abs(a)
    with np.errstate(all="ignore"):
        s = np.sqrt(x)
        p, e = two_prod(s, s)
        resid = np.where(s > 0, np.abs((x - p) - e) / (2.0 * s), 0.0)
        low = x - ra
        prop = np.where(low > 0, ra / (s + np.sqrt(np.maximum(low, 0.0))), np.sqrt(x + ra))
        prop = np.where(ra == 0, 0.0, prop)
        rad = (resid + prop) * _SAFE
    return s, _fix(rad)


def absval(a, ra):
    return np.abs(a), np.asarray(ra, dtype=np.float64)


def neg(a, ra):
    return -a, np.asarray(ra, dtype=np.float64)


# Smooth unary functions.  Each entry maps x -> (scalar function, bound on
# |f(x + d) - f(x)| for |d| <= r).  Library calls are faithfully rounded, so
# two ulps of the result cover their rounding.
def _exp_prop(x, y, r):
    return y * np.expm1(r)


def _lip1(x, y, r):
    return r


def _cosh_prop(x, y, r):
    return np.cosh(np.abs(x) + r) * r


UNARY = {
    "exp": (math.exp, _exp_prop),
    "sin": (math.sin, _lip1),
    "cos": (math.cos, _lip1),
    "tanh": (math.tanh, _lip1),
    "sinh": (math.sinh, _cosh_prop),
    "cosh": (math.cosh, _cosh_prop),
}


def apply_unary(name, a, ra):
    """Apply a named smooth function samplewise with the same scalar routine
    used by composed evaluators, so samples stay bit-reproducible."""
    fn, prop = UNARY[name]
    flat = np.asarray(a, dtype=np.float64).ravel()
    out = np.empty_like(flat)
    for i, v in enumerate(flat):
        try:
            out[i] = fn(float(v))
        except OverflowError:
            out[i] = math.inf
    y = out.reshape(np.shape(a))
    with np.errstate(all="ignore"):
        rnd = 2.0 * EPS * np.abs(y)
        pr = np.where(np.asarray(ra) == 0, 0.0, prop(a, np.abs(y), ra))
        rad = (rnd + pr) * _SAFE
    return y, _fix(rad)


def tsum(mid, rad, axis=-1):
    """Tracked sequential sum along ``axis`` (fixed left-to-right order)."""
    mid = np.asarray(mid, dtype=np.float64)
    rad = np.broadcast_to(np.asarray(rad, dtype=np.float64), mid.shape)
    mid = np.moveaxis(mid, axis, 0)
    rad = np.moveaxis(rad, axis, 0)
    s, r = mid[0], rad[0]
    for i in range(1, mid.shape[0]):
        s, r = add(s, r, mid[i], rad[i])
    return np.array(s, dtype=np.float64), np.array(r, dtype=np.float64)


def matmul(a, ra, b, rb):
    """Tracked product of stacked matrices ``(..., n, l) @ (..., l, m)``."""
    p, pr = mul(a[..., :, :, None], ra[..., :, :, None], b[..., None, :, :], rb[..., None, :, :])
    return tsum(p, pr, axis=-2)


def matvec(a, ra, v, rv):
    """Tracked product ``(..., n, l) @ (..., l)``."""
    p, pr = mul(a, ra, v[..., None, :], rv[..., None, :])
    return tsum(p, pr, axis=-1)


def dot(u, ru, v, rv):
    p, pr = mul(u, ru, v, rv)
    return tsum(p, pr, axis=-1)


def bilinear(g, rg, u, ru, v, rv):
    """Tracked ``u^T g v`` for stacks ``g: (..., n, n)``, ``u, v: (..., n)``."""
    gv, rgv = matvec(g, rg, v, rv)
    return dot(u, ru, gv, rgv)


def norm(v, rv):
    """Tracked Euclidean norm along the last axis.

    Entries are scaled by the largest magnitude first, which avoids
    overflow and underflow and keeps the result exact for vectors with a
    single nonzero entry.
    """
    m = np.max(np.abs(v), axis=-1)
    ms = np.where(m == 0, 1.0, m)
    t, rt = div(v, rv, ms[..., None], np.zeros_like(ms)[..., None])
    sq, rsq = mul(t, rt, t, rt)
    s, rs = tsum(sq, rsq, axis=-1)
    r, rr = sqrt_abs(s, rs)
    out, rout = mul(r, rr, ms, np.zeros_like(ms))
    # all-zero midpoints: the norm is bounded by the norm of the radii
    with np.errstate(all="ignore"):
        zr = np.sqrt(np.sum(np.asarray(rv) ** 2, axis=-1)) * _SAFE
    out = np.where(m == 0, 0.0, out)
    rout = np.where(m == 0, zr, rout)
    return out, _fix(rout)

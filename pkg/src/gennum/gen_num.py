"""Generalized numbers as sampled asymptotic nets.

A :class:`GenNumber` stores one representative net ``(x_eps)`` of a class in
the ring of generalized numbers, sampled on the dyadic grid
``eps_k = 2**-k`` (``k = 1..k_max``).  Each sample carries a rounding radius:
an upper bound on the distance between the stored float and the exact value
of the expression that produced it.  Nets built directly from an evaluator
have radius zero because their floats *are* the representative.

Asymptotic predicates ("there is m and eps_0 such that for all eps < eps_0")
are decided on the tail window ``k >= tail_start`` and return a three-valued
:class:`Verdict`.  Magnitudes are compared in log2 space, so ``eps**40``
never underflows.
"""

import enum
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from . import _tracked as T
from .errors import DivisionByNonInvertible, GridMismatch, NotModerate

DEFAULT_KMAX = 32
DEFAULT_MCAP = 40


# --------------------------------------------------------------------- grid


@dataclass(frozen=True)
class EpsGrid:
    """Dyadic sampling grid ``eps_k = 2**-k`` for ``k = 1..k_max``.

    Parameters
    ----------
    k_max : int
        Number of samples.
    tail_start : int, optional
        First grid index of the tail window used for asymptotic decisions.
        Defaults to ``k_max // 2``.
    m_cap : int
        Exponent cap: negligible means ``<= eps**m_cap`` on the tail and
        moderate means ``<= eps**-m_cap``.
    """

    k_max: int = DEFAULT_KMAX
    tail_start: Optional[int] = None
    m_cap: int = DEFAULT_MCAP

    def __post_init__(self):
        if self.k_max < 2:
            raise ValueError("k_max must be at least 2")
        ts = self.k_max // 2 if self.tail_start is None else int(self.tail_start)
        if not 1 <= ts < self.k_max:
            raise ValueError(f"tail_start must satisfy 1 <= tail_start < k_max, got {ts}")
        if self.m_cap < 1:
            raise ValueError("m_cap must be positive")
        object.__setattr__(self, "tail_start", ts)

    @property
    def ks(self) -> np.ndarray:
        return np.arange(1, self.k_max + 1)

    @property
    def eps(self) -> np.ndarray:
        return np.ldexp(1.0, -self.ks)

    def eps_at(self, k: int) -> float:
        return math.ldexp(1.0, -int(k))

    def index_of(self, eps: float) -> int:
        """Grid index ``k`` with ``eps == 2**-k``; raises for off-grid values."""
        m, e = math.frexp(eps)
        if m != 0.5 or not 1 <= 1 - e <= self.k_max:
            raise ValueError(f"{eps!r} is not a grid point")
        return 1 - e

    @property
    def tail(self) -> slice:
        """Array slice of the tail window."""
        return slice(self.tail_start - 1, self.k_max)

    @property
    def tail_ks(self) -> np.ndarray:
        return self.ks[self.tail]

    @property
    def late_start(self) -> int:
        """First index of the second half of the tail window."""
        return self.tail_start + (self.k_max - self.tail_start + 1) // 2

    def __len__(self):
        return self.k_max


def default_grid() -> EpsGrid:
    """Grid with ``k_max`` taken from ``GENNUM_KMAX`` when set."""
    env = os.environ.get("GENNUM_KMAX")
    if env:
        k = int(env)
        if not 8 <= k <= 64:
            raise ValueError("GENNUM_KMAX must lie in 8..64")
        return EpsGrid(k_max=k)
    return EpsGrid()


# ------------------------------------------------------------------ verdict


class Status(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Verdict:
    """Three-valued outcome of an asymptotic predicate on a finite grid.

    ``exponent`` is the certificate ``m`` of a Holds verdict; ``witnesses``
    are grid indices ``k`` (not array positions) supporting Fails or
    Inconclusive.
    """

    status: Status
    exponent: Optional[int] = None
    witnesses: Tuple[int, ...] = ()
    note: str = ""

    def __post_init__(self):
        object.__setattr__(self, "witnesses", tuple(int(k) for k in self.witnesses))
        if self.status is Status.HOLDS and self.exponent is None:
            raise ValueError("a Holds verdict needs an exponent certificate")
        if self.status is Status.FAILS and not self.witnesses:
            raise ValueError("a Fails verdict needs witness indices")

    @property
    def holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def inconclusive(self) -> bool:
        return self.status is Status.INCONCLUSIVE

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "exponent": self.exponent,
            "witnesses": list(self.witnesses),
            "note": self.note,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(Status(d["status"]), d.get("exponent"), tuple(d.get("witnesses", ())), d.get("note", ""))

    def __str__(self):
        s = self.status.value
        if self.exponent is not None:
            s += f"(m={self.exponent})"
        if self.witnesses:
            w = list(self.witnesses)
            s += f" witnesses={w[:6]}{'...' if len(w) > 6 else ''}"
        return s


def holds(exponent: int, note: str = "") -> Verdict:
    return Verdict(Status.HOLDS, exponent=int(exponent), note=note)


def _from_violations(grid: EpsGrid, bad: np.ndarray, exponent: int, *, persist="any", note="") -> Verdict:
    """Turn a per-sample violation mask into a verdict.

    No tail violation gives Holds.  With ``persist="any"`` a violation in the
    late half of the tail is enough for Fails (the condition fails along a
    subsequence); with ``persist="all"`` Fails needs every late-tail sample
    to violate.  Anything else is Inconclusive.
    """
    ks = grid.ks
    tail = ks >= grid.tail_start
    late = ks >= grid.late_start
    wit = ks[tail & bad]
    if wit.size == 0:
        return holds(exponent, note)
    late_bad = bad[late]
    failing = late_bad.any() if persist == "any" else late_bad.all()
    status = Status.FAILS if failing else Status.INCONCLUSIVE
    return Verdict(status, None, tuple(wit), note)


# ---------------------------------------------------------------- index sets


@dataclass(frozen=True)
class IndexSet:
    """A set of grid indices, standing in for a subset of the index set (0, 1].

    Use the constructors :meth:`all`, :meth:`even`, :meth:`odd`, :meth:`ap`,
    :meth:`pow2`, :meth:`explicit` and :meth:`complement`.
    """

    kind: str
    params: tuple = ()

    @classmethod
    def all(cls):
        return cls("All")

    @classmethod
    def even(cls):
        return cls("Even")

    @classmethod
    def odd(cls):
        return cls("Odd")

    @classmethod
    def ap(cls, a: int, d: int):
        """Arithmetic progression ``{a, a+d, a+2d, ...}``."""
        if d < 1:
            raise ValueError("progression step must be positive")
        return cls("ArithmeticProgression", (int(a), int(d)))

    @classmethod
    def pow2(cls):
        return cls("PowersOfTwo")

    @classmethod
    def explicit(cls, ks):
        return cls("Explicit", tuple(sorted({int(k) for k in ks})))

    def complement(self):
        if self.kind == "Complement":
            return self.params[0]
        return IndexSet("Complement", (self,))

    def contains(self, k: int) -> bool:
        k = int(k)
        kind = self.kind
        if kind == "All":
            return True
        if kind == "Even":
            return k % 2 == 0
        if kind == "Odd":
            return k % 2 == 1
        if kind == "ArithmeticProgression":
            a, d = self.params
            return k >= a and (k - a) % d == 0
        if kind == "PowersOfTwo":
            return k > 0 and k & (k - 1) == 0
        if kind == "Explicit":
            return k in self.params
        if kind == "Complement":
            return not self.params[0].contains(k)
        raise ValueError(f"unknown index set kind {kind!r}")

    def mask(self, grid: EpsGrid) -> np.ndarray:
        return np.array([self.contains(k) for k in grid.ks], dtype=bool)

    def __str__(self):
        if self.kind == "ArithmeticProgression":
            return f"ap{self.params}"
        if self.kind == "Explicit":
            return "{" + ",".join(map(str, self.params)) + "}"
        if self.kind == "Complement":
            return f"not({self.params[0]})"
        return self.kind.lower()


# ---------------------------------------------------------------- numbers


def _pow_int(x, n: int, mul):
    """Binary exponentiation, shared by samples and evaluators so both round alike."""
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


class GenNumber:
    """Sampled representative of a generalized number.

    Instances are immutable; arithmetic returns new instances whose
    evaluators are composed from the operands', so re-evaluating a derived
    net on the grid reproduces its samples bit for bit.

    Parameters
    ----------
    grid : EpsGrid
    samples : array_like
        One float per grid index (array position ``k - 1``).
    radius : array_like, optional
        Per-sample rounding bound; zero by default.
    evaluator : callable, optional
        ``eps -> float``.  Defaults to a lookup of the stored samples.
    label : str, optional
    """

    __slots__ = ("grid", "_samples", "_radius", "_evaluator", "label")
    __array_priority__ = 100  # make numpy scalars defer to our operators

    def __init__(self, grid: EpsGrid, samples, radius=None, evaluator=None, label=None):
        s = np.array(samples, dtype=np.float64).reshape(-1)
        if s.shape != (grid.k_max,):
            raise ValueError(f"expected {grid.k_max} samples, got {s.shape}")
        r = np.zeros_like(s) if radius is None else np.array(radius, dtype=np.float64).reshape(-1)
        if r.shape != s.shape:
            raise ValueError("radius must match samples")
        s.flags.writeable = False
        r.flags.writeable = False
        self.grid = grid
        self._samples = s
        self._radius = r
        self._evaluator = evaluator
        self.label = label

    # -- data
    @property
    def samples(self) -> np.ndarray:
        return self._samples

    @property
    def radius(self) -> np.ndarray:
        return self._radius

    @property
    def evaluator(self) -> Callable[[float], float]:
        if self._evaluator is not None:
            return self._evaluator
        grid, s = self.grid, self._samples

        def lookup(eps):
            return float(s[grid.index_of(eps) - 1])

        return lookup

    def at(self, k: int) -> float:
        return float(self._samples[int(k) - 1])

    def resample(self) -> np.ndarray:
        """Re-run the evaluator on the grid."""
        f = self.evaluator
        return np.array([f(e) for e in self.grid.eps.tolist()], dtype=np.float64)

    @property
    def is_exact(self) -> bool:
        return not self._radius.any()

    def __repr__(self):
        lab = f" {self.label}" if self.label else ""
        return f"<GenNumber{lab} tail={self._samples[self.grid.tail][-3:]}>"

    # -- arithmetic helpers
    def _coerce(self, other) -> "GenNumber":
        if isinstance(other, GenNumber):
            if other.grid != self.grid:
                raise GridMismatch(f"grids differ: {self.grid} vs {other.grid}")
            return other
        if isinstance(other, (int, float, np.integer, np.floating)):
            return const(float(other), self.grid)
        return NotImplemented

    def _binary(self, other, tracked, pyop, sym, reverse=False):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = (o, self) if reverse else (self, o)
        s, r = tracked(a._samples, a._radius, b._samples, b._radius)
        fa, fb = a.evaluator, b.evaluator
        return GenNumber(self.grid, s, r, lambda e: pyop(fa(e), fb(e)), _lab(a, sym, b))

    def __add__(self, other):
        return self._binary(other, T.add, lambda x, y: x + y, "+")

    def __radd__(self, other):
        return self._binary(other, T.add, lambda x, y: x + y, "+", reverse=True)

    def __sub__(self, other):
        return self._binary(other, T.sub, lambda x, y: x - y, "-")

    def __rsub__(self, other):
        return self._binary(other, T.sub, lambda x, y: x - y, "-", reverse=True)

    def __mul__(self, other):
        return self._binary(other, T.mul, lambda x, y: x * y, "*")

    def __rmul__(self, other):
        return self._binary(other, T.mul, lambda x, y: x * y, "*", reverse=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return divide(self, o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return divide(o, self)

    def __neg__(self):
        f = self.evaluator
        lab = f"-({self.label})" if self.label else None
        return GenNumber(self.grid, -self._samples, self._radius, lambda e: -f(e), lab)

    def __pos__(self):
        return self

    def __abs__(self):
        f = self.evaluator
        lab = f"abs({self.label})" if self.label else None
        return GenNumber(self.grid, np.abs(self._samples), self._radius, lambda e: abs(f(e)), lab)

    def __pow__(self, n):
        if not isinstance(n, (int, np.integer)):
            return NotImplemented
        n = int(n)
        if n == 0:
            return const(1.0, self.grid)
        if n < 0:
            return divide(const(1.0, self.grid), self ** (-n))
        out = _pow_int(self, n, lambda x, y: x * y)
        out.label = f"pow({self.label},{n})" if self.label else None
        return out

    # GenNumber deliberately keeps identity equality; use equals() for
    # equality in the ring.
    __hash__ = object.__hash__


def _lab(a, sym, b):
    if a.label and b.label:
        return f"({a.label} {sym} {b.label})"
    return None


def _check_grid(*xs):
    g = xs[0].grid
    for x in xs[1:]:
        if x.grid != g:
            raise GridMismatch("operands live on different grids")
    return g


def const(c: float, grid: Optional[EpsGrid] = None) -> GenNumber:
    """The constant net ``eps -> c``."""
    grid = grid or default_grid()
    c = float(c)
    return GenNumber(grid, np.full(grid.k_max, c), None, lambda e: c, repr(c))


def eps_net(grid: Optional[EpsGrid] = None) -> GenNumber:
    """The net ``eps -> eps``."""
    grid = grid or default_grid()
    return GenNumber(grid, grid.eps, None, lambda e: float(e), "eps")


def chi(A: IndexSet, grid: Optional[EpsGrid] = None) -> GenNumber:
    """Characteristic net of an index set: exactly 1 on ``A`` and 0 elsewhere."""
    grid = grid or default_grid()
    mask = A.mask(grid)

    def f(e):
        return 1.0 if A.contains(grid.index_of(e)) else 0.0

    return GenNumber(grid, mask.astype(np.float64), None, f, f"chi({A})")


def from_samples(samples, grid: Optional[EpsGrid] = None, radius=None, label=None) -> GenNumber:
    grid = grid or default_grid()
    return GenNumber(grid, samples, radius, None, label)


def make_gen(evaluator: Callable[[float], float], grid: Optional[EpsGrid] = None, label=None) -> GenNumber:
    """Sample an evaluator on the grid, rejecting non-moderate nets.

    Raises
    ------
    NotModerate
        If a sample is not finite or ``|x_eps| > eps**-m_cap`` on the tail.
    """
    grid = grid or default_grid()
    vals = []
    for k, e in zip(grid.ks.tolist(), grid.eps.tolist()):
        try:
            v = float(evaluator(e))
        except (OverflowError, ZeroDivisionError) as exc:
            raise NotModerate(f"evaluator failed at k={k}: {exc}") from exc
        if not math.isfinite(v):
            raise NotModerate(f"non-finite sample at k={k}")
        vals.append(v)
    x = GenNumber(grid, vals, None, evaluator, label)
    s = x.samples[grid.tail]
    with np.errstate(divide="ignore"):
        lg = np.log2(np.abs(s))
    bad = lg > grid.m_cap * grid.tail_ks
    if bad.any():
        raise NotModerate(
            f"|x_eps| exceeds eps^-{grid.m_cap} at k={grid.tail_ks[bad].tolist()}",
            Verdict(Status.FAILS, None, tuple(grid.tail_ks[bad])),
        )
    return x


def divide(x: GenNumber, y: GenNumber) -> GenNumber:
    """Quotient ``x / y``; the divisor must be invertible.

    Where the stored divisor sample is exactly zero (only possible before
    the tail window once invertibility Holds) the quotient sample is set to
    0, which does not change the class.
    """
    _check_grid(x, y)
    v = is_invertible(y)
    if not v.holds:
        raise DivisionByNonInvertible(f"divisor {y.label or ''} is not invertible: {v}", v)
    s, r = T.div(x.samples, x.radius, y.samples, y.radius)
    fx, fy = x.evaluator, y.evaluator

    def f(e):
        d = fy(e)
        return fx(e) / d if d != 0 else 0.0

    return GenNumber(x.grid, s, r, f, _lab(x, "/", y))


def _unary(name: str, x: GenNumber) -> GenNumber:
    fn = T.UNARY[name][0]
    s, r = T.apply_unary(name, x.samples, x.radius)
    fx = x.evaluator
    lab = f"{name}({x.label})" if x.label else None
    return GenNumber(x.grid, s, r, lambda e: fn(fx(e)), lab)


def gexp(x: GenNumber) -> GenNumber:
    return _unary("exp", x)


def gsin(x: GenNumber) -> GenNumber:
    return _unary("sin", x)


def gcos(x: GenNumber) -> GenNumber:
    return _unary("cos", x)


def gtanh(x: GenNumber) -> GenNumber:
    return _unary("tanh", x)


def gsinh(x: GenNumber) -> GenNumber:
    return _unary("sinh", x)


def gcosh(x: GenNumber) -> GenNumber:
    return _unary("cosh", x)


def gsqrt(x: GenNumber) -> GenNumber:
    """``sqrt(|x|)``; represents ``sqrt(x)`` whenever ``x >= 0`` on the tail."""
    s, r = T.sqrt_abs(x.samples, x.radius)
    fx = x.evaluator
    lab = f"sqrt({x.label})" if x.label else None
    return GenNumber(x.grid, s, r, lambda e: math.sqrt(abs(fx(e))), lab)


# --------------------------------------------------------------- predicates


def _log2_abs(v: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.log2(np.abs(v))


def _lower_abs(x: GenNumber) -> np.ndarray:
    """Certified lower bound of ``|x_eps|`` (may be <= 0)."""
    with np.errstate(invalid="ignore"):
        return np.abs(x.samples) - x.radius


def is_negligible(x: GenNumber) -> Verdict:
    """Decide whether ``|x_eps| <= eps**m_cap`` on the tail window.

    A sample whose magnitude is within its rounding radius counts as zero.
    Violations reaching the late half of the tail give Fails; violations
    confined to its early half give Inconclusive.
    """
    g = x.grid
    low = _lower_abs(x)
    bad = (low > 0) & (_log2_abs(low) > -g.m_cap * g.ks)
    v = _from_violations(g, bad, g.m_cap)
    if v.holds:
        return v
    fit = fit_order(x)
    note = f"fitted order {fit.order}" if fit.order is not NEGLIGIBLE else ""
    return Verdict(v.status, None, v.witnesses, note)


def _nonzero_certificate(lower: np.ndarray, grid: EpsGrid, strict: bool) -> int:
    """Smallest m >= 0 with ``lower > eps**m`` (strict) or ``>= eps**m`` on the tail."""
    k = grid.tail_ks
    e = -_log2_abs(lower[grid.tail]) / k  # lower = eps**e
    top = float(np.max(e))
    m = math.floor(top) + 1 if strict else math.ceil(top)
    return max(0, int(m))


def is_strictly_nonzero(x: GenNumber) -> Verdict:
    """Decide ``|x_eps| > eps**m0`` on the tail for some ``m0 <= m_cap``.

    Equivalent to invertibility.  The certificate is the smallest such
    ``m0``.
    """
    g = x.grid
    low = _lower_abs(x)
    bad = (low <= 0) | (_log2_abs(low) <= -g.m_cap * g.ks)
    v = _from_violations(g, bad, g.m_cap)
    if not v.holds:
        return v
    return holds(_nonzero_certificate(low, g, strict=True))


is_invertible = is_strictly_nonzero


def is_strictly_positive(x: GenNumber) -> Verdict:
    """Decide ``x_eps > eps**m_cap`` on the tail, certifying the smallest
    ``m0 >= 0`` with ``x_eps >= eps**m0`` there."""
    g = x.grid
    with np.errstate(invalid="ignore"):
        low = x.samples - x.radius
    bad = (low <= 0) | (_log2_abs(low) <= -g.m_cap * g.ks)
    v = _from_violations(g, bad, g.m_cap)
    if not v.holds:
        return v
    return holds(_nonzero_certificate(low, g, strict=False))


def is_strictly_negative(x: GenNumber) -> Verdict:
    return is_strictly_positive(-x)


def leq(x: GenNumber, y: GenNumber) -> Verdict:
    """Decide ``x <= y``: ``y_eps - x_eps >= -eps**m_cap`` on the tail.

    Fails needs the comparison to be violated on every late-tail sample;
    an oscillating comparison is Inconclusive, which is how the order's
    non-totality shows up.
    """
    g = _check_grid(x, y)
    d = y - x
    with np.errstate(invalid="ignore"):
        up = d.samples + d.radius
    bad = (up < 0) & (_log2_abs(up) > -g.m_cap * g.ks)
    return _from_violations(g, bad, g.m_cap, persist="all")


def equals(x: GenNumber, y: GenNumber) -> Verdict:
    """Equality in the ring: the difference is negligible."""
    return is_negligible(x - y)


# ---------------------------------------------------------------- order fit


class _NegligibleFlag:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NEGLIGIBLE"

    def __reduce__(self):
        return (_NegligibleFlag, ())


NEGLIGIBLE = _NegligibleFlag()

ORDER_SLACK = 0.25  # tolerated downward bias of the fitted slope


@dataclass(frozen=True)
class OrderFit:
    """Result of fitting ``|x_eps| ~ C eps**s`` over the tail window."""

    order: object  # int or NEGLIGIBLE
    slope: float
    spread: float
    low_confidence: bool
    used: int = field(default=0)


def fit_order(x: GenNumber) -> OrderFit:
    """Least-squares fit of ``log2|x_eps|`` against ``-k`` on the tail.

    The integer order is ``floor(slope + 0.25)``, biased toward the smaller
    (conservative) exponent.  Zero samples are skipped.  ``low_confidence``
    is set when fewer than four samples were usable or the residual spread
    exceeds one binary order of magnitude.
    """
    g = x.grid
    if is_negligible_raw(x):
        return OrderFit(NEGLIGIBLE, math.inf, 0.0, False, 0)
    s = x.samples[g.tail]
    k = g.tail_ks.astype(np.float64)
    nz = s != 0
    if nz.sum() < 2:
        return OrderFit(NEGLIGIBLE if nz.sum() == 0 else 0, math.nan, math.nan, True, int(nz.sum()))
    y = np.log2(np.abs(s[nz]))
    kk = k[nz]
    km = kk.mean()
    slope = -float(np.sum((kk - km) * (y - y.mean())) / np.sum((kk - km) ** 2))
    resid = y - (y.mean() - slope * (kk - km))
    spread = float(np.max(resid) - np.min(resid))
    order = int(math.floor(slope + ORDER_SLACK))
    low = nz.sum() < 4 or spread > 1.0 or not nz.all()
    return OrderFit(order, slope, spread, bool(low), int(nz.sum()))


def is_negligible_raw(x: GenNumber) -> bool:
    g = x.grid
    low = _lower_abs(x)[g.tail]
    return bool(np.all((low <= 0) | (_log2_abs(low) <= -g.m_cap * g.tail_ks)))


def estimate_order(x: GenNumber):
    """Integer asymptotic order of ``x`` or :data:`NEGLIGIBLE`."""
    return fit_order(x).order


# --------------------------------------------------------------- utilities


def zero(grid: Optional[EpsGrid] = None) -> GenNumber:
    return const(0.0, grid)


def one(grid: Optional[EpsGrid] = None) -> GenNumber:
    return const(1.0, grid)


def power_law(c: float, m: int, grid: Optional[EpsGrid] = None) -> GenNumber:
    """The net ``eps -> c * eps**m`` (exact on the dyadic grid)."""
    grid = grid or default_grid()
    c, m = float(c), int(m)
    return make_gen(lambda e: c * math.ldexp(1.0, -grid.index_of(e) * m) if m else c, grid, f"{c}*eps^{m}")


def as_gen(x, grid: EpsGrid) -> GenNumber:
    if isinstance(x, GenNumber):
        if x.grid != grid:
            raise GridMismatch("operand lives on a different grid")
        return x
    return const(float(x), grid)


def gsum(xs: Sequence[GenNumber]) -> GenNumber:
    out = xs[0]
    for x in xs[1:]:
        out = out + x
    return out

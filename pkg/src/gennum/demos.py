"""Canned scenarios reproducing the classic pathologies of generalized numbers.

Each demo returns a JSON-ready dict with a one-line ``conclusion`` and an
``ok`` flag that is True when the expected phenomenon was reproduced.
"""

import numpy as np

from .causal import inverse_cauchy_schwarz, minkowski
from .charts import ChartDomain, GenPoint, ScalarField, eval_scalar, moving_bump
from .errors import UnknownDemo
from .fixtures import cd_pair, csex_vectors, mixing_matrix
from .gen_linalg import GenMatrix, GenVector, det, gen_eigen, matrix_index
from .gen_num import EpsGrid, const, equals, is_negligible, leq


def demo_csex(grid: EpsGrid) -> dict:
    """Inverse Cauchy-Schwarz with a zero-divisor direction: the gap is
    ``lam**2 eps**2``, nonnegative but not strictly positive."""
    g = minkowski(4, grid)
    u, v, lam, alpha = csex_vectors(4, grid)
    rep = inverse_cauchy_schwarz(g, u, v)
    expected = lam * lam * alpha * alpha
    exact = bool(np.array_equal(rep.gap.samples, expected.samples))
    ok = exact and rep.inequality.holds and rep.strict.fails and rep.label == "zero-divisor-like"
    return {
        "demo": "csex",
        "ok": ok,
        "conclusion": (
            f"gap = lam^2 eps^2 ({'bit-exact' if exact else 'MISMATCH'}); "
            f"inequality {rep.inequality.status}, strict {rep.strict.status}, label {rep.label}"
        ),
        "gap_bit_exact": exact,
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "gap": rep.gap,
        "inequality": rep.inequality,
        "strict": rep.strict,
        "label": rep.label,
    }


def demo_mixing(grid: EpsGrid) -> dict:
    """Alternating diagonalizer: entries of ``A`` swap places with the grid
    parity, yet the ordered eigenvalues are the constant nets 1 and -1.
    ``theta = a_11`` makes ``A - theta I`` singular on every slice without
    being an eigenvalue."""
    a = mixing_matrix(grid)
    eig = gen_eigen(a)
    idx = matrix_index(a)
    l1 = equals(eig.eigenvalues[0], const(1.0, grid))
    l2 = equals(eig.eigenvalues[1], const(-1.0, grid))
    theta = a[0, 0]
    singular = is_negligible(det(a - GenMatrix.identity(2, grid).scale(theta)))
    is_l1 = equals(theta, eig.eigenvalues[0])
    is_l2 = equals(theta, eig.eigenvalues[1])
    ok = l1.holds and l2.holds and idx.nu_minus == 1 and singular.holds and not is_l1.holds and not is_l2.holds
    return {
        "demo": "mixing",
        "ok": ok,
        "conclusion": (
            f"eigenvalues (1, -1): {l1.status}/{l2.status}; index nu_minus={idx.nu_minus}; "
            f"theta=a_11 gives singular A - theta I ({singular.status}) but theta is not an eigenvalue "
            f"({is_l1.status}/{is_l2.status})"
        ),
        "eigenvalues": eig.eigenvalues,
        "lambda1_is_1": l1,
        "lambda2_is_minus1": l2,
        "index": idx,
        "theta_singular": singular,
        "theta_equals_lambda1": is_l1,
        "theta_equals_lambda2": is_l2,
    }


def demo_incomparable(grid: EpsGrid) -> dict:
    """``c = chi(even)`` and ``d = 1 - c``: ``c d = 0`` and neither ``c <= d``
    nor ``d <= c``."""
    c, d = cd_pair(grid)
    cd = leq(c, d)
    dc = leq(d, c)
    prod_zero = not (c * d).samples.any()
    ok = prod_zero and not cd.holds and not dc.holds
    return {
        "demo": "incomparable",
        "ok": ok,
        "conclusion": f"c*d = 0 exactly: {prod_zero}; c <= d {cd.status}, d <= c {dc.status}",
        "c_leq_d": cd,
        "d_leq_c": dc,
        "product_zero": prod_zero,
    }


def demo_pointvalue(grid: EpsGrid) -> dict:
    """Moving mollifier ``u_eps(x) = bump((x - eps)/eps)/eps``: zero at every
    standard point, but not at the generalized point ``x_eps = eps``."""
    dom = ChartDomain((-1.0,), (1.0,), "interval")
    u = ScalarField(moving_bump, dom, "moving bump")
    xs = [-0.75, -0.5, -0.1, 0.0, 0.05, 0.3, 0.9]
    std = {}
    for x in xs:
        p = GenPoint(lambda e, x=x: np.array([x]), grid, f"x={x}")
        std[p.label] = is_negligible(eval_scalar(u, p))
    drift = GenPoint(lambda e: np.array([e]), grid, "x_eps=eps")
    dv = eval_scalar(u, drift)
    dneg = is_negligible(dv)
    ok = all(v.holds for v in std.values()) and dneg.fails
    return {
        "demo": "pointvalue",
        "ok": ok,
        "conclusion": (
            f"standard points: {'all negligible' if all(v.holds for v in std.values()) else 'NOT all negligible'}; "
            f"drifting point value negligible: {dneg.status} (so u != 0)"
        ),
        "standard_points": std,
        "drifting_value": dv,
        "drifting_negligible": dneg,
    }


def demo_semisimple(grid: EpsGrid) -> dict:
    """``chi_D (1 - chi_D) = 0`` yet ``(1 - chi_D) u`` is not negligible: the
    submodule generated by ``chi_D u`` is a strict submodule of the one
    generated by ``u``, with no complement of the same form."""
    c, d = cd_pair(grid)
    u = GenVector.const([1.0, 0.0], grid)
    prod_zero = not (c * d).samples.any()
    du = u.scale(d)
    du_neg = du.is_negligible()
    cu_neg = u.scale(c).is_negligible()
    ok = prod_zero and du_neg.fails and cu_neg.fails
    return {
        "demo": "semisimple",
        "ok": ok,
        "conclusion": (
            f"chi_D (1 - chi_D) = 0 exactly: {prod_zero}; (1 - chi_D) u negligible: {du_neg.status}; "
            f"chi_D u negligible: {cu_neg.status}"
        ),
        "product_zero": prod_zero,
        "complement_part_negligible": du_neg,
        "chi_part_negligible": cu_neg,
    }


DEMOS = {
    "csex": demo_csex,
    "mixing": demo_mixing,
    "incomparable": demo_incomparable,
    "pointvalue": demo_pointvalue,
    "semisimple": demo_semisimple,
}


def run_demo(name: str, grid: EpsGrid) -> dict:
    try:
        fn = DEMOS[name]
    except KeyError:
        raise UnknownDemo(f"unknown demo {name!r}; available: {', '.join(sorted(DEMOS))}") from None
    return fn(grid)

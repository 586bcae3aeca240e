"""Compute reference values with sympy/mpmath and freeze them for the tests.

Nothing here imports ``gennum``: the values come from exact or
high-precision arithmetic, so the tests compare two independent routes.

Run from the repository root::

    python3 tools/derive_frozen.py > tests/frozen_values.json
"""

import json

import mpmath as mp
import sympy as sp

mp.mp.dps = 60
K_MAX = 32
TAIL = K_MAX // 2
KS = list(range(1, K_MAX + 1))


def eps(k):
    return mp.mpf(2) ** (-k)


def f64(x):
    return float(mp.mpf(x))


def order_envelope():
    """x = eps^2 (2 + sin(1/eps)): ratio x / eps^2 over the tail lies in [1, 3]."""
    r = [2 + mp.sin(1 / eps(k)) for k in KS[TAIL - 1:]]
    return {"ratio_min": f64(min(r)), "ratio_max": f64(max(r)),
            "slope_log2": f64((mp.log(r[-1], 2) - mp.log(r[0], 2)) / (len(r) - 1) - 2)}


def eps20_negligible():
    """eps^20 <= eps^40 fails at every tail index."""
    return {"violations": [k for k in KS[TAIL - 1:] if eps(k) ** 20 > eps(k) ** 40]}


def symmetrize_example():
    out = []
    for k in KS:
        e = eps(k)
        n = mp.exp(-1 / e)
        out.append([f64(e + n / 2), f64(e + n / 2)])
    return out


def eigen_2x2():
    lam = sp.Matrix([[2, 1], [1, 2]]).eigenvals()
    return sorted([float(x) for x in lam], reverse=True)


def minors_2x2():
    m = sp.Matrix([[2, 1], [1, 2]])
    return [float(m[:1, :1].det()), float(m.det())]


def extend_det():
    """det [v, e_1, e_3] for v = (eps, 1, 0): the leading coordinate is 2."""
    e = sp.Symbol("e")
    m = sp.Matrix([[e, 1, 0], [1, 0, 0], [0, 0, 1]])
    return str(sp.simplify(m.det()))


def projection():
    v = sp.Matrix([1, 0])
    b = sp.Matrix([1, 1]) / sp.sqrt(2)
    p = (b.T * v)[0] * b
    return [float(x) for x in p]


def complement_diag():
    """g = diag(-1, 2), u = e_1: complement vector, its Gram entry and the det identity."""
    g = sp.diag(-1, 2)
    gi = g.inv()
    xi = sp.Matrix([0, gi[1, 1]])
    gram = (xi.T * g * xi)[0]
    return {"xi": [float(x) for x in xi], "gram": float(gram),
            "det_identity": [float(gi[1, 1] * g.det()), float(g[0, 0])]}


def cs_pair():
    g = sp.diag(-1, 1, 1, 1)
    u = sp.Matrix([1, 0, 0, 0])
    v = sp.Matrix([2, 1, 0, 0])
    uv = (u.T * g * v)[0]
    uu = (u.T * g * u)[0]
    vv = (v.T * g * v)[0]
    return {"lhs": float(uv ** 2), "rhs": float(uu * vv), "gap": float(uv ** 2 - uu * vv)}


def classical_boost(t):
    """Standard boost matrix taking (1,0,0,0) to (cosh t, sinh t, 0, 0)."""
    c, s = mp.cosh(t), mp.sinh(t)
    return [[f64(c), f64(s), 0.0, 0.0], [f64(s), f64(c), 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]]


def metrconstr_eigs():
    """h for u = (1,0,0,0), v = (cosh 1, sinh 1, 0, 0) in Minkowski space."""
    g = sp.diag(-1, 1, 1, 1)
    u = sp.Matrix([1, 0, 0, 0])
    v = sp.Matrix([sp.cosh(1), sp.sinh(1), 0, 0])
    ul, vl = g * u, g * v
    h = (ul * vl.T + vl * ul.T) / 2 - g * (u.T * g * v)[0] / 2
    return sorted([float(sp.N(x, 30)) for x, m in h.eigenvals().items() for _ in range(m)], reverse=True)


def metrconstr_simple():
    g4 = sp.diag(-1, 1, 1, 1)
    u = sp.Matrix([1, 0, 0, 0])
    ul = g4 * u
    h4 = ul * ul.T - g4 * (u.T * g4 * u)[0] / 2
    g2 = sp.diag(-1, 1)
    u2 = sp.Matrix([1, 0])
    ul2 = g2 * u2
    h2 = ul2 * ul2.T - g2 * (u2.T * g2 * u2)[0] / 2
    return {"n4": [float(h4[i, i]) for i in range(4)], "n2": [float(h2[i, i]) for i in range(2)]}


def energy_example():
    g = sp.diag(-1, 1, 1, 1)
    th = sp.Matrix([1, 0, 0, 0])
    tt = (th.T * g * th)[0]
    E = th * th.T - g.inv() * tt / 2
    xi = sp.Matrix([1, 0, 0, 0])
    eta = E.T * (g * xi)
    return {"E_diag": [float(E[i, i]) for i in range(4)], "eta": [float(x) for x in eta],
            "eta_norm": float((eta.T * g * eta)[0]), "eta_xi": float((eta.T * g * xi)[0])}


def eval_metric_drift():
    """g(x) = diag(-1 - x1^2, 1) at p = (eps, 0): first entry per k."""
    return [f64(-1 - eps(k) ** 2) for k in KS]


def classify_field_bound():
    """max of 1 - x1^2 over x1 in [2, 3]."""
    x = sp.Symbol("x")
    return float(sp.maximum(1 - x ** 2, x, sp.Interval(2, 3)))


def cubic_roots():
    """Exact eigenvalues of [[2,1,0],[1,2,1],[0,1,2]]."""
    m = sp.Matrix([[2, 1, 0], [1, 2, 1], [0, 1, 2]])
    return sorted([float(sp.N(x, 30)) for x, mult in m.eigenvals().items() for _ in range(mult)], reverse=True)


def main():
    out = {
        "k_max": K_MAX,
        "order_envelope": order_envelope(),
        "eps20_negligible": eps20_negligible(),
        "symmetrize_offdiag": symmetrize_example(),
        "eigen_2x2": eigen_2x2(),
        "minors_2x2": minors_2x2(),
        "extend_det": extend_det(),
        "projection": projection(),
        "complement_diag": complement_diag(),
        "cs_pair": cs_pair(),
        "boost_t1": classical_boost(1),
        "metrconstr_eigs": metrconstr_eigs(),
        "metrconstr_simple": metrconstr_simple(),
        "energy": energy_example(),
        "eval_metric_drift": eval_metric_drift(),
        "classify_field_bound": classify_field_bound(),
        "cubic_roots": cubic_roots(),
    }
    print(json.dumps(out, indent=1, sort_keys=True))


if __name__ == "__main__":
    main()

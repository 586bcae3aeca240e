import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gennum.fixtures import random_invertible, random_signature_matrix
from gennum.gen_linalg import (
    GenMatrix,
    GenVector,
    bilinear,
    extend_to_basis,
    is_free,
    is_free_max,
    matrix_index,
    orthogonal_decomposition,
    orthogonal_project,
)
from gennum.gen_num import (
    NEGLIGIBLE,
    EpsGrid,
    GenNumber,
    IndexSet,
    chi,
    divide,
    equals,
    estimate_order,
    is_invertible,
    is_negligible,
    is_strictly_positive,
    leq,
)

GRID = EpsGrid(32)
SETTINGS = settings(max_examples=60, deadline=None)

coef = st.floats(min_value=0.25, max_value=4.0)
signs = st.sampled_from([-1.0, 1.0])
orders = st.integers(min_value=0, max_value=6)
index_sets = st.one_of(
    st.just(IndexSet.even()),
    st.just(IndexSet.odd()),
    st.just(IndexSet.pow2()),
    st.builds(IndexSet.ap, st.integers(0, 4), st.integers(1, 5)),
    st.builds(IndexSet.explicit, st.lists(st.integers(1, 32), max_size=8)),
)


@st.composite
def power_nets(draw, lo=0, hi=6, signed=True):
    """c * eps**m * (1 + a eps) with c bounded away from zero: exact order m."""
    c = draw(coef) * (draw(signs) if signed else 1.0)
    m = draw(st.integers(lo, hi))
    a = draw(st.floats(-0.5, 0.5))
    e = GRID.eps
    return GenNumber(GRID, c * e ** m * (1 + a * e)), m


@st.composite
def moderate_nets(draw):
    vals = draw(st.lists(st.floats(-1e3, 1e3, allow_nan=False), min_size=32, max_size=32))
    return GenNumber(GRID, vals)


@st.composite
def exact_nets(draw, m=0):
    """Small-integer samples times ``eps**m``: ring operations stay exact."""
    ks = draw(st.lists(st.integers(-1024, 1024), min_size=32, max_size=32))
    return GenNumber(GRID, np.asarray(ks, dtype=float) * GRID.eps ** m)


# ------------------------------------------------------------------ ring


@SETTINGS
@given(moderate_nets(), moderate_nets())
def test_commutativity_bitwise(x, y):
    assert np.array_equal((x + y).samples, (y + x).samples)
    assert np.array_equal((x * y).samples, (y * x).samples)


@SETTINGS
@given(moderate_nets(), moderate_nets(), moderate_nets())
def test_associativity_and_distributivity_as_classes(x, y, z):
    assert equals((x + y) + z, x + (y + z)).holds
    assert equals((x * y) * z, x * (y * z)).holds
    assert equals(x * (y + z), x * y + x * z).holds


@SETTINGS
@given(st.integers(0, 3).flatmap(lambda m: st.tuples(exact_nets(m), exact_nets(m), exact_nets(m))))
def test_ring_laws_exact_on_integer_nets(xyz):
    x, y, z = xyz
    assert np.array_equal(((x + y) + z).samples, (x + (y + z)).samples)
    assert np.array_equal(((x * y) * z).samples, (x * (y * z)).samples)
    assert np.array_equal((x * (y + z)).samples, (x * y + x * z).samples)
    assert not (x * (y + z) - (x * y + x * z)).radius.any()


@SETTINGS
@given(index_sets, index_sets)
def test_chi_identities(a, b):
    ca, cb = chi(a, GRID), chi(b, GRID)
    assert np.array_equal((ca * ca).samples, ca.samples)
    assert np.array_equal((ca + chi(a.complement(), GRID)).samples, np.ones(32))
    inter = a.mask(GRID) & b.mask(GRID)
    assert np.array_equal((ca * cb).samples, inter.astype(float))


@SETTINGS
@given(index_sets)
def test_chi_zero_divisor(a):
    ca = chi(a, GRID)
    both_infinite = ca.samples[GRID.tail].any() and not ca.samples[GRID.tail].all()
    assume(both_infinite)
    assert not is_invertible(ca).holds
    assert not is_negligible(ca).holds


# ------------------------------------------------------------------ order


@SETTINGS
@given(power_nets(), power_nets())
def test_order_additive(xm, ym):
    (x, m), (y, n) = xm, ym
    assert estimate_order(x) == m
    assert estimate_order(x * y) == m + n


@SETTINGS
@given(power_nets(0, 20))
def test_invertible_iff_exact_order(xm):
    x, m = xm
    v = is_invertible(x)
    # |c| ranges over [1/4, 4], so eps^m or eps^(m+1) certifies it
    assert v.holds and v.exponent in (m, m + 1)
    q = divide(GenNumber(GRID, np.ones(32)), x)
    assert equals(q * x, GenNumber(GRID, np.ones(32))).holds


def test_negligible_flag():
    assert estimate_order(GenNumber(GRID, np.exp(-1 / GRID.eps))) is NEGLIGIBLE


# ------------------------------------------------------------------ order relation


@SETTINGS
@given(power_nets(signed=False), power_nets(signed=False))
def test_positivity_closed(xm, ym):
    (x, _), (y, _) = xm, ym
    assert is_strictly_positive(x).holds
    assert is_strictly_positive(x + y).holds
    assert is_strictly_positive(x * y).holds


@SETTINGS
@given(moderate_nets(), moderate_nets(), moderate_nets())
def test_leq_translation_and_transitivity(x, y, z):
    if leq(x, y).holds:
        assert leq(x + z, y + z).holds
        if leq(y, z).holds:
            assert leq(x, z).holds
    assert leq(x, x).holds


@SETTINGS
@given(moderate_nets())
def test_negligible_perturbation_invisible(x):
    n = GenNumber(GRID, np.exp(-1 / GRID.eps))
    assert equals(x + n, x).holds
    assert leq(x + n, x).holds and leq(x, x + n).holds


# ------------------------------------------------------------------ linear algebra


@st.composite
def free_vectors(draw, n=3):
    entries = []
    lead = draw(st.integers(0, n - 1))
    for i in range(n):
        if i == lead:
            x, _ = draw(power_nets(0, 8))
        else:
            choice = draw(st.integers(0, 2))
            if choice == 0:
                x = GenNumber(GRID, np.zeros(32))
            elif choice == 1:
                x = chi(draw(index_sets), GRID)
            else:
                x, _ = draw(power_nets(0, 8))
        entries.append(x)
    return GenVector.from_entries(entries, GRID)


@SETTINGS
@given(free_vectors())
def test_freeness_characterizations_agree(v):
    assert is_free(v).holds
    assert is_free_max(v).holds
    assert len(extend_to_basis(v)) == v.n


@SETTINGS
@given(st.lists(st.floats(-3, 3), min_size=3, max_size=3), st.lists(st.floats(-3, 3), min_size=3, max_size=3))
def test_projection_idempotent_and_orthogonal(b, v):
    assume(np.linalg.norm(b) > 0.1)
    h = GenMatrix.identity(3, GRID)
    base = [GenVector.const(b, GRID)]
    vv = GenVector.const(v, GRID)
    p, w = orthogonal_decomposition(base, h, vv)
    assert is_negligible(bilinear(h, w, base[0])).holds
    pp = orthogonal_project(base, h, p)
    assert (pp - p).is_negligible().holds


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4), st.data())
def test_sylvester_inertia(seed, n, data):
    rng = np.random.default_rng(seed)
    n_neg = data.draw(st.integers(0, n))
    a = random_invertible(rng, n, GRID)
    b = random_signature_matrix(rng, n, n_neg, GRID)
    i1, i2 = matrix_index(b), matrix_index(a.T @ b @ a)
    assert i1.nu_minus == n_neg
    assert (i2.nu_plus, i2.nu_minus) == (i1.nu_plus, i1.nu_minus)

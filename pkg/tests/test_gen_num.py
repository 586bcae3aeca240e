import math

import numpy as np
import pytest

from gennum.errors import GridMismatch, NotModerate
from gennum.gen_num import (
    NEGLIGIBLE,
    EpsGrid,
    GenNumber,
    IndexSet,
    Status,
    Verdict,
    chi,
    const,
    default_grid,
    divide,
    eps_net,
    equals,
    estimate_order,
    fit_order,
    gexp,
    gsqrt,
    is_invertible,
    is_negligible,
    is_strictly_negative,
    is_strictly_nonzero,
    is_strictly_positive,
    leq,
    make_gen,
    power_law,
)


# ------------------------------------------------------------------ grid


def test_grid_defaults():
    g = EpsGrid(32)
    assert g.tail_start == 16
    assert g.m_cap == 40
    assert g.eps[0] == 0.5
    assert g.eps[-1] == 2.0 ** -32
    assert g.index_of(2.0 ** -7) == 7


def test_grid_env_override(monkeypatch):
    monkeypatch.setenv("GENNUM_KMAX", "24")
    assert default_grid().k_max == 24


@pytest.mark.parametrize("kw", [{"k_max": 1}, {"k_max": 8, "tail_start": 8}, {"k_max": 8, "m_cap": 0}])
def test_grid_rejects_bad_parameters(kw):
    with pytest.raises(ValueError):
        EpsGrid(**kw)


def test_grid_mismatch():
    with pytest.raises(GridMismatch):
        const(1.0, EpsGrid(16)) + const(1.0, EpsGrid(32))


# ------------------------------------------------------------------ construction


def test_make_gen_power_law(grid):
    x = make_gen(lambda e: e * e, grid)
    assert estimate_order(x) == 2
    assert np.array_equal(x.samples, grid.eps ** 2)


def test_make_gen_negligible(grid):
    x = make_gen(lambda e: math.exp(-1.0 / e), grid)
    assert estimate_order(x) is NEGLIGIBLE
    assert is_negligible(x).holds


def test_make_gen_not_moderate(grid):
    with pytest.raises(NotModerate):
        make_gen(lambda e: math.exp(1.0 / e), grid)


def test_samples_read_only(grid):
    x = eps_net(grid)
    with pytest.raises(ValueError):
        x.samples[0] = 1.0


def test_resample_reproduces(grid):
    x = gexp(eps_net(grid)) * 3.0 - chi(IndexSet.even(), grid)
    assert np.array_equal(x.resample(), x.samples)


# ------------------------------------------------------------------ order


def test_order_cubic(grid):
    assert estimate_order(make_gen(lambda e: 3 * e ** 3, grid)) == 3


@pytest.mark.parametrize("kmax", [16, 24, 32, 48, 64])
def test_order_oscillating(kmax, frozen):
    g = EpsGrid(kmax)
    x = make_gen(lambda e: e * e * (2 + math.sin(1 / e)), g)
    assert estimate_order(x) == 2


def test_order_oscillating_envelope(grid, frozen):
    # the frozen envelope comes from 60-digit arithmetic
    x = make_gen(lambda e: e * e * (2 + math.sin(1 / e)), grid)
    ratio = x.samples[grid.tail] / grid.eps[grid.tail] ** 2
    env = frozen["order_envelope"]
    assert ratio.min() == pytest.approx(env["ratio_min"], rel=1e-12)
    assert ratio.max() == pytest.approx(env["ratio_max"], rel=1e-12)
    assert 1.0 <= ratio.min() and ratio.max() <= 3.0


def test_fit_order_fields(grid):
    fit = fit_order(power_law(2.0, 4, grid))
    assert fit.order == 4
    assert abs(fit.slope - 4) < 1e-9
    assert not fit.low_confidence


# ------------------------------------------------------------------ ring


def test_chi_disjoint_product(grid):
    x = chi(IndexSet.even(), grid) * chi(IndexSet.odd(), grid)
    assert not x.samples.any()


def test_eps_squared(grid):
    e = eps_net(grid)
    assert np.array_equal((e * e).samples, grid.eps ** 2)


def test_cd_pair_product_zero(grid):
    c = chi(IndexSet.even(), grid)
    d = 1.0 - c
    assert not (c * d).samples.any()


def test_chi_identities(grid):
    ev, od = chi(IndexSet.even(), grid), chi(IndexSet.odd(), grid)
    assert np.array_equal((ev * ev).samples, ev.samples)
    assert np.array_equal((ev + od).samples, np.ones(grid.k_max))


def test_chi_complement(grid):
    s = IndexSet.ap(1, 3)
    a = chi(s, grid) + chi(s.complement(), grid)
    assert np.array_equal(a.samples, np.ones(grid.k_max))


def test_pow_and_neg(grid):
    e = eps_net(grid)
    assert np.array_equal((e ** 3).samples, grid.eps ** 3)
    assert np.array_equal((-e).samples, -grid.eps)


def test_division(grid):
    e = eps_net(grid)
    q = divide(e * e, e)
    assert equals(q, e).holds


def test_division_by_zero_divisor_raises(grid):
    from gennum.errors import DivisionByNonInvertible

    with pytest.raises(DivisionByNonInvertible):
        divide(const(1.0, grid), chi(IndexSet.even(), grid))


def test_sqrt_of_square(grid):
    e = eps_net(grid)
    assert equals(gsqrt(e * e), e).holds


# ------------------------------------------------------------------ predicates


def test_negligible_examples(grid, frozen):
    assert is_negligible(const(1.0, grid)).fails
    v = is_negligible(power_law(1.0, 20, grid))
    assert v.fails
    # witnesses are tail indices where eps^20 exceeds eps^40
    assert set(v.witnesses) <= set(frozen["eps20_negligible"]["violations"])


def test_strictly_nonzero_certificate(grid):
    v = is_strictly_nonzero(power_law(1.0, 5, grid))
    assert v.holds and v.exponent == 6


def test_invertible_alias(grid):
    c = chi(IndexSet.even(), grid)
    assert is_invertible(c).fails
    assert is_invertible(make_gen(lambda e: math.exp(-1 / e), grid)).fails


def test_strictly_positive(grid):
    v = is_strictly_positive(2.0 + eps_net(grid))
    assert v.holds and v.exponent == 0
    assert is_strictly_positive(-eps_net(grid)).fails
    assert is_strictly_positive(chi(IndexSet.even(), grid)).fails
    assert is_strictly_negative(-eps_net(grid)).holds


def test_leq_examples(grid):
    z = const(0.0, grid)
    n = make_gen(lambda e: math.exp(-1 / e), grid)
    assert leq(z, n).holds and leq(n, z).holds
    assert leq(eps_net(grid), const(1.0, grid)).holds
    c = chi(IndexSet.even(), grid)
    assert not leq(c, 1.0 - c).holds
    assert not leq(1.0 - c, c).holds


def test_leq_late_violation_fails(grid):
    assert leq(const(1.0, grid), const(0.0, grid)).fails


def test_verdict_roundtrip():
    v = Verdict(Status.INCONCLUSIVE, None, (17, 19), "note")
    assert Verdict.from_dict(v.to_dict()) == v


def test_env_kmax_range(monkeypatch):
    monkeypatch.setenv("GENNUM_KMAX", "70")
    with pytest.raises(ValueError):
        default_grid()

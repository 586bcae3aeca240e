import numpy as np
import pytest

from gennum.errors import DimensionTooLarge, SliceNotLorentzian
from gennum.fixtures import csex_vectors, random_negligible, random_symmetric
from gennum.gen_linalg import GenMatrix, GenVector, gen_eigen, is_free
from gennum.gen_num import IndexSet, chi, power_law
from gennum.oracle import (
    bisection_eigs,
    classical_eigs,
    count_below,
    cubic_eigs,
    expected_causal_kind,
    freeness_oracle,
    quadratic_eigs,
    slice_causality_oracle,
    slice_eigen_oracle,
)


def test_quadratic_closed_form(frozen):
    assert np.allclose(quadratic_eigs(np.array([[2.0, 1.0], [1.0, 2.0]])), frozen["eigen_2x2"], rtol=1e-15)
    assert np.array_equal(quadratic_eigs(np.diag([1.0, -1.0])), [1.0, -1.0])


def test_cubic_closed_form(frozen):
    a = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]])
    assert np.allclose(cubic_eigs(a), frozen["cubic_roots"], rtol=1e-14)


def test_bisection_matches_closed_form(frozen):
    a = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]])
    assert np.allclose(bisection_eigs(a), frozen["cubic_roots"], rtol=1e-13)


def test_inertia_count():
    a = np.diag([3.0, -1.0, 2.0])
    assert count_below(a, 0.0) == 1
    assert count_below(a, 2.5) == 2


def test_dimension_limit(grid):
    with pytest.raises(DimensionTooLarge):
        slice_eigen_oracle(GenMatrix.identity(7, grid))
    with pytest.raises(DimensionTooLarge):
        classical_eigs(np.eye(7))


def test_eigen_oracle_diag(grid):
    a = GenMatrix.diag([1.0, -1.0], grid)
    reps = slice_eigen_oracle(a, pipeline=gen_eigen(a))
    assert all(r.delta == 0.0 for r in reps)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_eigen_oracle_agrees_with_jacobi(grid, rng, n):
    a = random_symmetric(rng, n, grid)
    reps = slice_eigen_oracle(a, pipeline=gen_eigen(a))
    for r, norm in zip(reps, np.sqrt(np.sum(a.mid ** 2, axis=(1, 2)))):
        assert r.delta <= 1e-10 * max(1.0, norm)


def test_perturbation_bound(grid, rng):
    a = random_symmetric(rng, 3, grid)
    reps = slice_eigen_oracle(a, perturbation=random_negligible(rng, 3, grid))
    assert all(r.within_bound(1e-10) for r in reps)


def test_causality_oracle_minkowski(grid):
    g = GenMatrix.diag([-1.0, 1.0, 1.0, 1.0], grid)
    reps = slice_causality_oracle(g, GenVector.basis(0, 4, grid))
    assert {r.value for r in reps} == {"timelike"}
    assert expected_causal_kind(reps, grid.tail_start) == "TimeLike"


def test_causality_oracle_csex(grid):
    g = GenMatrix.diag([-1.0, 1.0, 1.0, 1.0], grid)
    u, v, lam, alpha = csex_vectors(4, grid)
    reps = slice_causality_oracle(g, v)
    assert {r.value for r in reps} == {"timelike"}


def test_causality_oracle_alternating(grid):
    g = GenMatrix.diag([-1.0, 1.0], grid)
    c = chi(IndexSet.even(), grid)
    v = GenVector.from_entries([c, 1.0 - c], grid)
    reps = slice_causality_oracle(g, v)
    assert {r.value for r in reps} == {"timelike", "spacelike"}
    assert expected_causal_kind(reps, grid.tail_start) == "Unclassifiable"


def test_causality_oracle_rejects_riemannian(grid):
    with pytest.raises(SliceNotLorentzian):
        slice_causality_oracle(GenMatrix.identity(2, grid), GenVector.basis(0, 2, grid))


def test_freeness_oracle_examples(grid):
    s = freeness_oracle(GenVector.basis(0, 3, grid))
    assert s.free and s.exponent == 0
    s = freeness_oracle(GenVector.from_entries([chi(IndexSet.even(), grid), 0.0], grid))
    assert not s.free
    v = GenVector.from_entries([power_law(1.0, 10, grid), power_law(1.0, 20, grid)], grid)
    s = freeness_oracle(v)
    # the largest coordinate is eps^10, so the lower-bound exponent is 10
    assert s.free and s.exponent == 10
    assert s.free == is_free(v).holds

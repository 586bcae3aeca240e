import math

import numpy as np
import pytest

from gennum.errors import CoefficientNotStrictlyNonzero, Degenerate, DegenerateGram, NotFree, NotSymmetricClass
from gennum.fixtures import mixing_matrix, negligible_net
from gennum.gen_linalg import (
    GenMatrix,
    GenVector,
    coordinate_matrix,
    det,
    det_eigen_gap,
    extend_to_basis,
    gen_eigen,
    idempotent_partition,
    inverse,
    is_basis,
    is_free,
    is_free_max,
    is_nondegenerate,
    matrix_index,
    orthogonal_decomposition,
    orthogonal_project,
    partition_vector,
    principal_minor_test,
    steinitz_exchange,
    symmetrize,
)
from gennum.gen_num import IndexSet, chi, const, eps_net, equals, gsum, is_negligible, power_law


def _minkowski(grid, n=4):
    return GenMatrix.diag([-1.0] + [1.0] * (n - 1), grid)


def _entries_equal(a, values):
    return all(equals(a[i, j], const(values[i][j], a.grid)).holds for i in range(a.n) for j in range(a.n))


# ------------------------------------------------------------------ symmetrize


def test_symmetrize_keeps_symmetric(grid):
    e = eps_net(grid)
    a = GenMatrix.from_entries([[1.0, e], [e, 2.0]], grid)
    s = symmetrize(a)
    assert np.array_equal(s.mid, a.mid)


def test_symmetrize_negligible_asymmetry(grid, frozen):
    e = eps_net(grid)
    a = GenMatrix.from_entries([[1.0, e + negligible_net(grid)], [e, 2.0]], grid)
    s = symmetrize(a)
    want = np.array(frozen["symmetrize_offdiag"])
    assert np.allclose(s.mid[:, 0, 1], want[:, 0], rtol=1e-15, atol=0)
    assert np.array_equal(s.mid[:, 0, 1], s.mid[:, 1, 0])
    assert (s - a).is_negligible().holds


def test_symmetrize_rejects_antisymmetric(grid):
    with pytest.raises(NotSymmetricClass):
        symmetrize(GenMatrix.const([[0.0, 1.0], [-1.0, 0.0]], grid))


# ------------------------------------------------------------------ eigen


def test_eigen_diag(grid):
    r = gen_eigen(GenMatrix.diag([1.0, -1.0], grid))
    assert np.array_equal(r.eigenvalues[0].samples, np.ones(grid.k_max))
    assert np.array_equal(r.eigenvalues[1].samples, -np.ones(grid.k_max))
    assert r.converged


def test_eigen_2x2(grid, frozen):
    r = gen_eigen(GenMatrix.const([[2.0, 1.0], [1.0, 2.0]], grid))
    for lam, want in zip(r.eigenvalues, frozen["eigen_2x2"]):
        assert equals(lam, const(want, grid)).holds
        assert np.allclose(lam.samples, want, rtol=1e-15)
    assert is_negligible(r.residual).holds
    assert r.orthogonality_defect().is_negligible().holds


def test_eigen_negligible_nonsymmetric_perturbation(grid, rng):
    from gennum.fixtures import random_negligible

    a = GenMatrix.diag([1.0, -1.0], grid) + random_negligible(rng, 2, grid)
    r = gen_eigen(a)
    assert equals(r.eigenvalues[0], const(1.0, grid)).holds
    assert equals(r.eigenvalues[1], const(-1.0, grid)).holds


def test_eigen_mixing(grid):
    a = mixing_matrix(grid)
    r = gen_eigen(a)
    assert equals(r.eigenvalues[0], const(1.0, grid)).holds
    assert equals(r.eigenvalues[1], const(-1.0, grid)).holds
    # entries alternate with the grid parity
    assert a.mid[1, 0, 0] == 1.0 and a.mid[0, 0, 0] == -1.0


def test_eigen_orientation(grid, rng):
    from gennum.fixtures import random_symmetric

    r = gen_eigen(random_symmetric(rng, 4, grid))
    assert np.allclose(np.linalg.det(r.U.mid), 1.0)


def test_det_eigen_gap(grid, rng):
    from gennum.fixtures import random_symmetric

    for n in (2, 3, 4, 5):
        assert is_negligible(det_eigen_gap(random_symmetric(rng, n, grid))).holds


# ------------------------------------------------------------------ det


def test_det_diag_eps(grid):
    d = det(GenMatrix.diag([eps_net(grid), 1.0], grid))
    assert np.array_equal(d.samples, grid.eps)
    v = is_nondegenerate(GenMatrix.diag([eps_net(grid), 1.0], grid))
    assert v.holds and v.exponent == 2


def test_det_zero_divisor(grid):
    c = chi(IndexSet.even(), grid)
    a = GenMatrix.diag([c, 1.0], grid)
    assert np.array_equal(det(a).samples, c.samples)
    assert is_nondegenerate(a).fails


def test_det_minkowski(grid):
    assert np.array_equal(det(_minkowski(grid)).samples, -np.ones(grid.k_max))
    assert is_nondegenerate(_minkowski(grid)).holds


def test_det_lu_matches_laplace(grid, rng):
    from gennum.fixtures import random_invertible

    a = random_invertible(rng, 4, grid)
    assert np.allclose(det(a).samples, np.linalg.det(a.mid), rtol=1e-12)


def test_inverse(grid, rng):
    from gennum.fixtures import random_invertible

    a = random_invertible(rng, 4, grid)
    prod = a @ inverse(a) - GenMatrix.identity(4, grid)
    assert prod.is_negligible().holds


# ------------------------------------------------------------------ index


def test_index_minkowski(grid):
    idx = matrix_index(_minkowski(grid))
    assert (idx.nu_plus, idx.nu_minus) == (3, 1)
    assert idx.is_lorentzian


def test_index_alternating_undefined(grid):
    c = chi(IndexSet.even(), grid)
    idx = matrix_index(GenMatrix.diag([1.0 - 2.0 * c, 1.0], grid))
    assert not idx.defined
    assert idx.verdict.fails


def test_index_positive_definite_with_negligible(grid):
    n = negligible_net(grid)
    idx = matrix_index(GenMatrix.from_entries([[2.0, n], [n, 3.0]], grid))
    assert idx.nu_plus == 2 and idx.is_positive_definite


def test_index_degenerate_raises(grid):
    with pytest.raises(Degenerate):
        matrix_index(GenMatrix.diag([chi(IndexSet.even(), grid), 1.0], grid))


def test_index_small_eigenvalue(grid):
    idx = matrix_index(GenMatrix.diag([1.0, -2.0, eps_net(grid)], grid))
    assert (idx.nu_plus, idx.nu_minus) == (2, 1)


# ------------------------------------------------------------------ freeness


def test_free_basis_vector(grid):
    assert is_free(GenVector.basis(0, 3, grid)).holds


def test_free_zero_divisor_entry(grid):
    v = GenVector.from_entries([chi(IndexSet.even(), grid), 0.0], grid)
    assert is_free(v).fails
    assert is_free_max(v).fails


def test_free_partition_vector(grid):
    for n in (2, 3, 4, 5):
        v, m = partition_vector(n, grid)
        assert is_free(v).holds
        for i in range(n):
            assert not is_free(GenVector.from_entries([v[i]], grid)).holds
        assert equals(det(m), const(1.0, grid)).holds


def test_partition_sums_to_one(grid):
    lam = idempotent_partition(4, grid)
    assert np.array_equal(gsum(lam).samples, np.ones(grid.k_max))


def test_extend_canonical(grid):
    b = extend_to_basis(GenVector.basis(0, 3, grid))
    assert np.array_equal(coordinate_matrix(b).mid, np.broadcast_to(np.eye(3), (grid.k_max, 3, 3)))


def test_extend_swaps_leading_coordinate(grid, frozen):
    v = GenVector.from_entries([eps_net(grid), 1.0, 0.0], grid)
    b = extend_to_basis(v)
    # columns: v, e_1 (in place of e_2), e_3
    assert np.array_equal(b[1].mid[-1], [1.0, 0.0, 0.0])
    assert frozen["extend_det"] == "-1"
    assert np.array_equal(det(coordinate_matrix(b)).samples, -np.ones(grid.k_max))
    assert is_basis(b).holds


def test_extend_rejects_non_free(grid):
    with pytest.raises(NotFree):
        extend_to_basis(GenVector.from_entries([chi(IndexSet.even(), grid), 0.0], grid))


def test_steinitz_examples(grid):
    basis = [GenVector.basis(i, 2, grid) for i in range(2)]
    out = steinitz_exchange(basis, GenVector.const([1.0, 1.0], grid), 0)
    assert np.array_equal(out[0].mid[-1], [1.0, 1.0]) and out[1] is basis[1]
    with pytest.raises(CoefficientNotStrictlyNonzero):
        steinitz_exchange(basis, GenVector.from_entries([chi(IndexSet.even(), grid), 1.0], grid), 0)
    out = steinitz_exchange(basis, GenVector.from_entries([power_law(1.0, 3, grid), 1.0], grid), 0)
    assert is_basis(out).holds


# ------------------------------------------------------------------ positivity and projection


def test_principal_minors(grid, frozen):
    a = GenMatrix.const([[2.0, 1.0], [1.0, 2.0]], grid)
    assert frozen["minors_2x2"] == [2.0, 3.0]
    assert principal_minor_test(a).holds
    assert principal_minor_test(_minkowski(grid)).fails
    e = eps_net(grid)
    v = principal_minor_test(GenMatrix.diag([e, e], grid))
    # minors eps and eps^2; the certificate covers the smaller one
    assert v.holds and v.exponent == 2


def test_project_axis(grid):
    p = orthogonal_project([GenVector.basis(0, 2, grid)], GenMatrix.identity(2, grid), GenVector.const([3.0, 4.0], grid))
    assert equals(p[0], const(3.0, grid)).holds and is_negligible(p[1]).holds


def test_project_diagonal(grid, frozen):
    s = 1 / math.sqrt(2)
    p = orthogonal_project([GenVector.const([s, s], grid)], GenMatrix.identity(2, grid), GenVector.const([1.0, 0.0], grid))
    for i, want in enumerate(frozen["projection"]):
        assert equals(p[i], const(want, grid)).holds


def test_project_idempotent_on_subspace(grid):
    e1 = GenVector.basis(0, 3, grid)
    p, w = orthogonal_decomposition([e1], GenMatrix.identity(3, grid), e1)
    assert (p - e1).is_negligible().holds and w.is_negligible().holds


def test_project_needs_positive_definite(grid):
    with pytest.raises(DegenerateGram):
        orthogonal_project([GenVector.basis(0, 4, grid)], _minkowski(grid), GenVector.basis(1, 4, grid))

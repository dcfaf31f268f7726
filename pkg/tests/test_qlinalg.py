import numpy as np
import pytest
from hypothesis import given, settings

from conftest import complex_vectors, su2_elements
from ewlgame import qlinalg as ql
from ewlgame.errors import NormError
from oracles import kron_loops, kron_vec_loops


def test_identity_tensor_identity():
    assert np.array_equal(ql.tensor_product(ql.I2, ql.I2), ql.I4)


def test_plus_minus_is_third_basis_vector():
    out = ql.tensor_product(ql.KET_PLUS, ql.KET_MINUS)
    assert np.array_equal(out, [0, 0, 1, 0])
    assert np.array_equal(out, ql.basis_ket("+-"))


def test_vector_convention_first_factor_fastest():
    a, b, c, d = 2, 3, 5, 7
    assert np.array_equal(ql.tensor_product([a, b], [c, d]), [a * c, b * c, a * d, b * d])


def test_d_tensor_d_against_loop_oracle():
    out = ql.tensor_product(ql.D, ql.D)
    np.testing.assert_array_equal(out, kron_loops(ql.D, ql.D))
    np.testing.assert_array_equal(out, -ql.tensor_product(ql.SIGMA2, ql.SIGMA2))


@settings(max_examples=50, deadline=None)
@given(su2_elements(), su2_elements(), complex_vectors(2), complex_vectors(2))
def test_tensor_convention_on_products(a, b, u, w):
    lhs = ql.tensor_product(a.matrix, b.matrix) @ ql.tensor_product(u, w)
    rhs = kron_vec_loops(a.matrix @ u, b.matrix @ w)
    np.testing.assert_allclose(lhs, rhs, atol=1e-14 * max(1.0, np.abs(rhs).max()))


def test_mixed_matrices_against_loop_oracle(rng):
    a = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    np.testing.assert_allclose(ql.tensor_product(a, b), kron_loops(a, b), atol=1e-14, rtol=0)


def test_su2_from_params_examples():
    assert np.array_equal(ql.su2_from_params(1, 0).matrix, np.eye(2))
    assert np.array_equal(ql.su2_from_params(0, 1).matrix, [[0, 1], [-1, 0]])
    np.testing.assert_array_equal(ql.su2_from_params(0, 1).matrix, 1j * ql.SIGMA2)
    u = ql.su2_from_params(1 / np.sqrt(2), 1j / np.sqrt(2)).matrix
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(u) - 1) < 1e-12


def test_su2_from_params_renormalizes_small_error():
    u = ql.su2_from_params(1 + 4e-10, 0)
    assert abs(abs(u.alpha) - 1) < 1e-15


@pytest.mark.parametrize("alpha,beta", [(1.1, 0), (0.5, 0.5), (0, 0), (np.nan, 0)])
def test_su2_from_params_rejects(alpha, beta):
    with pytest.raises(NormError):
        ql.su2_from_params(alpha, beta)


@settings(max_examples=100, deadline=None)
@given(su2_elements())
def test_su2_is_special_unitary(u):
    m = u.matrix
    np.testing.assert_allclose(m.conj().T @ m, np.eye(2), atol=1e-12)
    assert abs(np.linalg.det(m) - 1) < 1e-12


def test_su2_random_deterministic():
    assert ql.su2_random(42) == ql.su2_random(42)
    assert ql.su2_random(42) != ql.su2_random(43)


def test_su2_random_haar_mean():
    n = 10_000
    mats = np.array([u.matrix for u in ql.su2_random_batch(n, 7)])
    mean = mats.mean(axis=0)
    bound = 3 / np.sqrt(n)
    assert np.all(np.abs(mean.real) < bound)
    assert np.all(np.abs(mean.imag) < bound)


def test_su2_random_samples_are_special_unitary():
    for u in ql.su2_random_batch(200, 3):
        m = u.matrix
        assert np.max(np.abs(m.conj().T @ m - np.eye(2))) < 1e-12
        assert abs(np.linalg.det(m) - 1) < 1e-12


def test_su2_group_ops():
    u, v = ql.su2_random_batch(2, 1)
    np.testing.assert_allclose((u @ v).matrix, u.matrix @ v.matrix, atol=1e-15)
    np.testing.assert_allclose(u.dagger().matrix, u.matrix.conj().T, atol=0)
    for k, sigma in enumerate((ql.SIGMA1, ql.SIGMA2, ql.SIGMA3)):
        axis = np.eye(3)[k]
        expected = np.cos(0.4) * np.eye(2) + 1j * np.sin(0.4) * sigma
        np.testing.assert_allclose(ql.su2_exp(0.4, axis).matrix, expected, atol=1e-15)


def test_antiunitary_on_plus():
    out = ql.antiunitary_apply(ql.AntiUnitaryOp(1), [1, 0])
    np.testing.assert_array_equal(out, [0, 1j])


def test_antiunitary_rejects_non_phase():
    with pytest.raises(NormError):
        ql.AntiUnitaryOp(2.0)


@settings(max_examples=50, deadline=None)
@given(complex_vectors(2), su2_elements())
def test_antiunitary_squares_to_minus_one_and_commutes(v, u):
    op = ql.AntiUnitaryOp(np.exp(0.9j))
    twice = ql.antiunitary_apply(op, ql.antiunitary_apply(op, v))
    np.testing.assert_allclose(twice, -v, atol=1e-12)
    lhs = u.matrix @ ql.antiunitary_apply(op, v)
    rhs = ql.antiunitary_apply(op, u.matrix @ v)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12 * max(1, np.abs(v).max()))


def test_pseudoreality_over_haar_sample(rng):
    ops = [ql.AntiUnitaryOp(np.exp(1j * t)) for t in (0.0, 1.0, np.pi / 2)]
    for u in ql.su2_random_batch(100, rng):
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        for op in ops:
            diff = u.matrix @ ql.antiunitary_apply(op, v) - ql.antiunitary_apply(op, u.matrix @ v)
            assert np.max(np.abs(diff)) < 1e-12


def test_tensor_antiunitary_is_involution(rng):
    for _ in range(100):
        v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        w = ql.tensor_antiunitary_apply(1j, -1, ql.tensor_antiunitary_apply(1j, -1, v))
        assert np.max(np.abs(w - v)) < 1e-12


def test_tensor_antiunitary_commutes_with_product_moves(rng):
    u, v = ql.su2_random_batch(2, rng)
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    k = ql.tensor_product(u.matrix, v.matrix)
    np.testing.assert_allclose(
        k @ ql.tensor_antiunitary_apply(1j, -1, x), ql.tensor_antiunitary_apply(1j, -1, k @ x), atol=1e-12
    )


@settings(max_examples=50, deadline=None)
@given(complex_vectors(4))
def test_real_project_idempotent_and_fixed(v):
    once = ql.real_project(v, 1j, -1)
    np.testing.assert_allclose(ql.real_project(once, 1j, -1), once, atol=1e-12)
    np.testing.assert_allclose(ql.tensor_antiunitary_apply(1j, -1, once), once, atol=1e-12)


def test_real_project_leaves_fixed_vector():
    v = ql.real_project(np.array([1, 2j, -3, 0.5 + 1j]), 1j, -1)
    np.testing.assert_allclose(ql.real_project(v, 1j, -1), v, atol=1e-15)

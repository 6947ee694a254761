import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dstrength.linalg import (
    ContractViolationError,
    SIGMA_X,
    SIGMA_Z,
    bloch_to_ket,
    bloch_to_state,
    check_density_matrix,
    eig_hermitian,
    haar_random_unitary,
    kron,
    mat_pow,
    partial_trace_b,
    random_density_matrix,
    random_pure_state,
    schmidt_decompose,
    sqrtm,
)
from .conftest import bell_vector


class TestEigHermitian:
    def test_identity(self):
        w, v = eig_hermitian(np.eye(2))
        assert_allclose(w, [1.0, 1.0])
        assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_already_diagonal(self):
        w, _ = eig_hermitian(np.diag([0.7, 0.3]))
        assert_allclose(w, [0.7, 0.3])

    def test_plus_projector(self):
        # (I + sigma_x)/2 has eigenpairs (1, |+>) and (0, |->)
        w, v = eig_hermitian((np.eye(2) + SIGMA_X) / 2)
        assert_allclose(w, [1.0, 0.0], atol=1e-12)
        plus = np.array([1, 1]) / np.sqrt(2)
        assert abs(abs(np.vdot(plus, v[:, 0])) - 1.0) < 1e-10

    def test_reconstruction_descending(self, rng):
        m = random_density_matrix(5, rng)
        w, v = eig_hermitian(m)
        assert np.all(np.diff(w) <= 1e-15)
        assert_allclose((v * w) @ v.conj().T, m, atol=1e-9)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ContractViolationError):
            eig_hermitian(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestMatPow:
    def test_identity_exponent(self, rng):
        rho = random_density_matrix(3, rng)
        assert_allclose(mat_pow(rho, 1.0), rho, atol=1e-12)

    def test_projector_idempotent(self):
        p = np.diag([1.0, 0.0]).astype(complex)
        assert_allclose(mat_pow(p, 0.5), p, atol=1e-12)

    def test_elementwise_eigenvalue_power(self):
        assert_allclose(mat_pow(np.diag([0.64, 0.36]), 0.5),
                        np.diag([0.8, 0.6]), atol=1e-12)

    def test_zero_exponent_is_support_projector(self):
        p = np.diag([1.0, 0.0]).astype(complex)
        assert_allclose(mat_pow(p, 0.0), p, atol=1e-12)

    def test_exponent_range(self, rng):
        rho = random_density_matrix(2, rng)
        with pytest.raises(ValueError):
            mat_pow(rho, 1.5)
        with pytest.raises(ValueError):
            mat_pow(rho, -0.1)

    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), dim=st.sampled_from([2, 3, 4]),
           s=st.floats(0.0, 1.0))
    def test_complementary_powers_have_unit_trace(self, seed, dim, s):
        rho = random_density_matrix(dim, np.random.default_rng(seed))
        prod = mat_pow(rho, s) @ mat_pow(rho, 1.0 - s)
        assert abs(np.trace(prod).real - 1.0) < 1e-9


class TestSqrtm:
    def test_square_recovers(self, rng):
        rho = random_density_matrix(4, rng)
        s = sqrtm(rho)
        assert_allclose(s @ s, rho, atol=1e-9)
        assert_allclose(s, mat_pow(rho, 0.5), atol=1e-12)


class TestKron:
    def test_identities(self):
        assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_sigma_z_with_identity(self):
        assert_allclose(kron(SIGMA_Z, np.eye(2)), np.diag([1, 1, -1, -1]))

    def test_basis_projector(self):
        p0 = np.diag([1.0, 0.0])
        p1 = np.diag([0.0, 1.0])
        expected = np.zeros((4, 4))
        expected[1, 1] = 1.0
        assert_allclose(kron(p0, p1), expected)


class TestPartialTrace:
    def test_product_basis_state(self):
        psi = np.zeros(4, dtype=complex)
        psi[0] = 1.0
        rho = np.outer(psi, psi.conj())
        assert_allclose(partial_trace_b(rho, 2, 2), np.diag([1.0, 0.0]), atol=1e-12)

    def test_bell_marginal_is_maximally_mixed(self, bell):
        assert_allclose(partial_trace_b(bell.rho, 2, 2), np.eye(2) / 2, atol=1e-12)

    def test_recovers_first_factor_of_product(self, rng):
        rho_a = random_density_matrix(3, rng)
        rho_b = random_density_matrix(2, rng)
        assert_allclose(partial_trace_b(kron(rho_a, rho_b), 3, 2), rho_a, atol=1e-10)

    def test_dim_mismatch(self, rng):
        with pytest.raises(ContractViolationError):
            partial_trace_b(random_density_matrix(4, rng), 2, 3)


class TestSchmidt:
    def test_product_state(self):
        psi = np.zeros(4, dtype=complex)
        psi[0] = 1.0
        q, _, _ = schmidt_decompose(psi, 2, 2)
        assert_allclose(q, [1.0, 0.0], atol=1e-12)

    def test_bell(self):
        q, _, _ = schmidt_decompose(bell_vector(), 2, 2)
        assert_allclose(q, [0.5, 0.5], atol=1e-12)

    def test_two_term_superposition(self):
        psi = np.zeros(4, dtype=complex)
        psi[0] = np.sqrt(0.9)
        psi[3] = np.sqrt(0.1)
        q, _, _ = schmidt_decompose(psi, 2, 2)
        assert_allclose(q, [0.9, 0.1], atol=1e-12)

    def test_reconstruction(self, rng):
        psi = random_pure_state(6, rng)
        q, ua, vb = schmidt_decompose(psi, 2, 3)
        rebuilt = sum(np.sqrt(q[j]) * np.kron(ua[:, j], vb[j, :]) for j in range(2))
        phase = np.vdot(rebuilt, psi)
        assert abs(abs(phase) - 1.0) < 1e-9
        assert_allclose(rebuilt * phase / abs(phase), psi, atol=1e-9)

    def test_zero_padding_when_b_smaller(self, rng):
        psi = random_pure_state(6, rng)
        q, _, _ = schmidt_decompose(psi, 3, 2)
        assert q.size == 3
        assert q[2] < 1e-12
        assert abs(q.sum() - 1.0) < 1e-12

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1))
    def test_local_unitary_invariance(self, seed):
        g = np.random.default_rng(seed)
        psi = random_pure_state(6, g)
        q0, _, _ = schmidt_decompose(psi, 2, 3)
        rot = kron(haar_random_unitary(2, g), haar_random_unitary(3, g))
        q1, _, _ = schmidt_decompose(rot @ psi, 2, 3)
        assert_allclose(q0, q1, atol=1e-9)


class TestBloch:
    def test_north_pole(self):
        assert_allclose(bloch_to_state([0, 0, 1]), np.diag([1.0, 0.0]), atol=1e-12)

    def test_plus_state(self):
        assert_allclose(bloch_to_state([1, 0, 0]), np.full((2, 2), 0.5), atol=1e-12)

    def test_circular_state(self):
        # (|0> + i|1>)/sqrt(2)
        expected = 0.5 * np.array([[1.0, -1j], [1j, 1.0]])
        assert_allclose(bloch_to_state([0, 1, 0]), expected, atol=1e-12)

    def test_purity(self, rng):
        n = rng.standard_normal(3)
        n /= np.linalg.norm(n)
        rho = bloch_to_state(n)
        check_density_matrix(rho)
        assert abs(np.trace(rho @ rho).real - 1.0) < 1e-10
        ket = bloch_to_ket(n)
        assert_allclose(np.outer(ket, ket.conj()), rho, atol=1e-12)

    def test_rejects_non_unit(self):
        with pytest.raises(ContractViolationError):
            bloch_to_state([0.5, 0, 0])


class TestHaar:
    def test_scalar_case(self):
        u = haar_random_unitary(1, np.random.default_rng(0))
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12

    def test_deterministic_given_seed(self):
        u1 = haar_random_unitary(2, np.random.default_rng(7))
        u2 = haar_random_unitary(2, np.random.default_rng(7))
        assert_allclose(u1, u2)

    def test_columns_are_orthonormal(self):
        g = np.random.default_rng(3)
        for _ in range(100):
            u = haar_random_unitary(3, g)
            assert_allclose(np.linalg.norm(u, axis=0), np.ones(3), atol=1e-10)
            assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-10)


class TestValidators:
    def test_rejects_non_psd(self):
        with pytest.raises(ContractViolationError):
            check_density_matrix(np.diag([1.5, -0.5]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(ContractViolationError):
            check_density_matrix(np.diag([0.7, 0.7]))

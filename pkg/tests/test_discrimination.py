import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from dstrength.discrimination import (
    chernoff_decay_check,
    chernoff_overlap,
    fidelity,
    helstrom_error,
    trace_norm,
)
from dstrength.linalg import (
    CapacityError,
    ContractViolationError,
    haar_random_unitary,
    random_density_matrix,
    random_pure_state,
    sqrtm,
)

P0 = np.diag([1.0, 0.0]).astype(complex)
P1 = np.diag([0.0, 1.0]).astype(complex)
PLUS = np.full((2, 2), 0.5, dtype=complex)


class TestChernoffOverlap:
    def test_identical_states(self, rng):
        rho = random_density_matrix(3, rng)
        res = chernoff_overlap(rho, rho)
        assert abs(res.q - 1.0) < 1e-12
        assert res.xi < 1e-10

    def test_orthogonal_pure_states(self):
        res = chernoff_overlap(P0, P1)
        assert res.q == 0.0
        assert math.isinf(res.xi)

    def test_mixed_versus_pure_endpoint(self):
        # g(s) = (1/2)^s is minimized at the right endpoint
        res = chernoff_overlap(np.eye(2) / 2, P0)
        assert abs(res.q - 0.5) < 1e-12
        assert abs(res.s_star - 1.0) < 1e-9

    def test_q_equals_exp_minus_xi(self, rng):
        res = chernoff_overlap(random_density_matrix(3, rng),
                               random_density_matrix(3, rng))
        assert abs(res.q - math.exp(-res.xi)) < 1e-10

    def test_symmetry(self, rng):
        for _ in range(20):
            a = random_density_matrix(3, rng)
            b = random_density_matrix(3, rng)
            assert abs(chernoff_overlap(a, b).q - chernoff_overlap(b, a).q) < 1e-8

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2 ** 32 - 1), dim=st.sampled_from([2, 3, 4]))
    def test_bound_chain(self, seed, dim):
        # 0 <= q <= Tr[sqrt(rho0) sqrt(rho1)] <= 1
        g = np.random.default_rng(seed)
        a = random_density_matrix(dim, g)
        b = random_density_matrix(dim, g)
        q = chernoff_overlap(a, b).q
        mid = float(np.trace(sqrtm(a) @ sqrtm(b)).real)
        assert -1e-12 <= q <= mid + 1e-9 <= 1.0 + 2e-9

    def test_bound_chain_batch(self, rng):
        for dim in (2, 3, 4):
            for _ in range(200):
                a = random_density_matrix(dim, rng)
                b = random_density_matrix(dim, rng)
                q = chernoff_overlap(a, b).q
                mid = float(np.trace(sqrtm(a) @ sqrtm(b)).real)
                assert -1e-12 <= q <= mid + 1e-9 <= 1.0 + 2e-9

    def test_pure_reduction_to_fidelity(self, rng):
        for dim in (2, 3, 4):
            psi = random_pure_state(dim, rng)
            pure = np.outer(psi, psi.conj())
            mixed = random_density_matrix(dim, rng)
            assert abs(chernoff_overlap(pure, mixed).q - fidelity(pure, mixed)) < 1e-8
            assert abs(chernoff_overlap(mixed, pure).q - fidelity(mixed, pure)) < 1e-8

    def test_unitary_covariance(self, rng):
        a = random_density_matrix(3, rng)
        b = random_density_matrix(3, rng)
        q0 = chernoff_overlap(a, b).q
        for _ in range(5):
            u = haar_random_unitary(3, rng)
            q1 = chernoff_overlap(u @ a @ u.conj().T, u @ b @ u.conj().T).q
            assert abs(q0 - q1) < 1e-8

    def test_joint_concavity_on_mixtures(self, rng):
        # Q(sum p rho_i, sum p sigma_i) >= sum p Q(rho_i, sigma_i)
        for _ in range(10):
            p = rng.dirichlet(np.ones(3))
            rhos = [random_density_matrix(3, rng) for _ in range(3)]
            sigmas = [random_density_matrix(3, rng) for _ in range(3)]
            mixed_q = chernoff_overlap(sum(pi * r for pi, r in zip(p, rhos)),
                                       sum(pi * s for pi, s in zip(p, sigmas))).q
            parts = sum(pi * chernoff_overlap(r, s).q
                        for pi, r, s in zip(p, rhos, sigmas))
            assert mixed_q >= parts - 1e-8

    def test_dim_mismatch(self, rng):
        with pytest.raises(ContractViolationError):
            chernoff_overlap(random_density_matrix(2, rng), random_density_matrix(3, rng))


class TestFidelity:
    def test_identical(self, rng):
        rho = random_density_matrix(3, rng)
        assert abs(fidelity(rho, rho) - 1.0) < 1e-9

    def test_pure_overlap(self):
        assert abs(fidelity(P0, PLUS) - 0.5) < 1e-12

    def test_mixed_with_pure(self):
        assert abs(fidelity(np.eye(2) / 2, P0) - 0.5) < 1e-12

    def test_symmetric(self, rng):
        a = random_density_matrix(4, rng)
        b = random_density_matrix(4, rng)
        assert abs(fidelity(a, b) - fidelity(b, a)) < 1e-9

    def test_pure_pure(self, rng):
        psi = random_pure_state(3, rng)
        phi = random_pure_state(3, rng)
        f = fidelity(np.outer(psi, psi.conj()), np.outer(phi, phi.conj()))
        assert abs(f - abs(np.vdot(psi, phi)) ** 2) < 1e-9


class TestTraceNorm:
    def test_zero(self):
        assert trace_norm(np.zeros((3, 3))) == 0.0

    def test_density_matrix(self, rng):
        assert abs(trace_norm(random_density_matrix(3, rng)) - 1.0) < 1e-10

    def test_orthogonal_difference(self):
        assert abs(trace_norm(P0 - P1) - 2.0) < 1e-12


class TestHelstrom:
    def test_perfectly_distinguishable(self):
        assert helstrom_error(P0, P1, 1) == 0.0

    def test_pure_guessing(self, rng):
        rho = random_density_matrix(2, rng)
        assert abs(helstrom_error(rho, rho.copy(), 3) - 0.5) < 1e-12

    def test_zero_plus_pair(self):
        expected = (1.0 - 1.0 / math.sqrt(2)) / 2.0
        assert abs(helstrom_error(P0, PLUS, 1) - expected) < 1e-12

    def test_does_not_mutate_inputs(self):
        a, b = P0.copy(), PLUS.copy()
        helstrom_error(a, b, 1)
        assert_allclose(a, P0)
        assert_allclose(b, PLUS)

    def test_monotone_in_copies(self, rng):
        a = random_density_matrix(2, rng)
        b = random_density_matrix(2, rng)
        errors = [helstrom_error(a, b, n) for n in range(1, 5)]
        assert np.all(np.diff(errors) <= 1e-10)

    def test_capacity_guard(self, rng):
        a = random_density_matrix(4, rng)
        b = random_density_matrix(4, rng)
        with pytest.raises(CapacityError):
            helstrom_error(a, b, 7)


class TestDecayCheck:
    def test_orthogonal_states(self):
        out = chernoff_decay_check(P0, P1, 3)
        assert math.isinf(out["xi"])
        for row in out["rows"]:
            assert row["p_err"] == 0.0
            assert math.isinf(row["exponent"])

    def test_identical_states(self, rng):
        rho = random_density_matrix(2, rng)
        out = chernoff_decay_check(rho, rho.copy(), 3)
        assert abs(out["xi"]) < 1e-10
        for row in out["rows"]:
            assert abs(row["p_err"] - 0.5) < 1e-10
            assert abs(row["exponent"] - math.log(2) / row["n"]) < 1e-8

    def test_zero_plus_exponents_approach_log2_from_above(self):
        out = chernoff_decay_check(P0, PLUS, 6)
        assert abs(out["q"] - 0.5) < 1e-12
        exps = [row["exponent"] for row in out["rows"]]
        # bounded below by xi = ln 2 and decreasing toward it
        assert np.all(np.diff(exps) < 0)
        assert all(e >= math.log(2) - 1e-12 for e in exps)
        assert exps[-1] - math.log(2) < exps[0] - math.log(2)
        for row in out["rows"]:
            assert row["p_err"] <= 0.5 * out["q"] ** row["n"] + 1e-10

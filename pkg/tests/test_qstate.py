import math

import numpy as np
import pytest

from ergoloss.qstate import (
    BlochAngles,
    DensityMatrix,
    StateValidationError,
    antipodal_pair,
    bloch_vector_state,
    eig_hermitian_2x2,
    pure_from_bloch,
    random_density_matrix,
    thermal_ground_population,
    thermal_qubit,
)


class TestBlochAngles:
    def test_range_validation(self):
        BlochAngles(0.0, 0.0)
        BlochAngles(math.pi, 6.28)
        with pytest.raises(ValueError):
            BlochAngles(-0.1)
        with pytest.raises(ValueError):
            BlochAngles(math.pi + 0.1)
        with pytest.raises(ValueError):
            BlochAngles(1.0, 2.0 * math.pi)


class TestDensityMatrix:
    def test_rejects_non_hermitian(self):
        with pytest.raises(StateValidationError):
            DensityMatrix(np.array([[0.5, 0.5], [0.1, 0.5]]))

    def test_rejects_wrong_trace(self):
        with pytest.raises(StateValidationError):
            DensityMatrix(np.array([[0.6, 0.0], [0.0, 0.6]]))

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(StateValidationError):
            DensityMatrix(np.array([[1.2, 0.0], [0.0, -0.2]]))

    def test_rejects_wrong_shape(self):
        with pytest.raises(StateValidationError):
            DensityMatrix(np.eye(3) / 3.0)

    def test_immutable(self):
        rho = DensityMatrix.maximally_mixed()
        with pytest.raises(ValueError):
            rho.mat[0, 0] = 1.0

    def test_population_accessors(self):
        rho = DensityMatrix.from_populations(0.3, 0.1 + 0.2j)
        assert rho.rho11 == pytest.approx(0.3)
        assert rho.rho22 == pytest.approx(0.7)
        assert rho.rho12 == pytest.approx(0.1 + 0.2j)
        assert rho.rho21 == pytest.approx(0.1 - 0.2j)

    def test_bloch_round_trip(self):
        r = np.array([0.3, -0.4, 0.5])
        rho = DensityMatrix.from_bloch(r)
        assert np.allclose(rho.bloch(), r, atol=1e-14)

    def test_eigvals_descending_sum_one(self):
        rho = DensityMatrix.from_populations(0.3, 0.1 + 0.2j)
        hi, lo = rho.eigvals()
        assert hi >= lo
        assert hi + lo == pytest.approx(1.0)


class TestPureStates:
    def test_pure_from_bloch_poles(self):
        north = pure_from_bloch(BlochAngles(0.0))
        south = pure_from_bloch(BlochAngles(math.pi))
        assert north.rho11 == pytest.approx(1.0)
        assert south.rho22 == pytest.approx(1.0)

    def test_state_is_normalized(self):
        psi = bloch_vector_state(BlochAngles(1.1, 2.2))
        assert np.vdot(psi, psi).real == pytest.approx(1.0)

    def test_antipodal_pair_orthogonal_and_complete(self):
        for angles in (BlochAngles(0.7, 1.3), BlochAngles(math.pi / 2, 0.0)):
            rho_a, rho_b = antipodal_pair(angles)
            assert np.allclose(rho_a.mat + rho_b.mat, np.eye(2), atol=1e-14)
            assert abs(np.trace(rho_a.mat @ rho_b.mat)) < 1e-14

    def test_antipodal_bloch_vectors_opposite(self):
        rho_a, rho_b = antipodal_pair(BlochAngles(0.9, 4.0))
        assert np.allclose(rho_a.bloch(), -rho_b.bloch(), atol=1e-14)


class TestThermal:
    def test_ground_population_value(self):
        # p1 = (1 + tanh(1)) / 2 at omega0 = T = 1
        assert thermal_ground_population(1.0, 1.0) == pytest.approx(
            0.8807970779778824, abs=1e-12
        )

    def test_limits(self):
        assert thermal_qubit(1.0, 0.0).rho22 == pytest.approx(1.0)
        assert thermal_qubit(1.0, math.inf).rho22 == pytest.approx(0.5)

    def test_diagonal(self):
        assert thermal_qubit(2.0, 0.7).rho12 == 0.0

    def test_negative_temperature_rejected(self):
        with pytest.raises(ValueError):
            thermal_qubit(1.0, -1.0)

    def test_monotone_in_temperature(self):
        pops = [thermal_ground_population(1.0, T) for T in (0.1, 0.5, 1.0, 5.0, 50.0)]
        assert all(a > b for a, b in zip(pops, pops[1:]))
        assert all(0.5 < p <= 1.0 for p in pops)


class TestEigHermitian:
    def test_reconstruction(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            m = a + a.conj().T
            w, v = eig_hermitian_2x2(m)
            assert w[0] >= w[1]
            assert np.allclose(v @ np.diag(w) @ v.conj().T, m, atol=1e-12)
            assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    def test_matches_numpy(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
            m = a + a.conj().T
            w, _ = eig_hermitian_2x2(m)
            assert np.allclose(np.sort(w), np.linalg.eigvalsh(m), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            eig_hermitian_2x2(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestRandomStates:
    def test_valid_and_deterministic(self):
        r1 = random_density_matrix(np.random.default_rng(3))
        r2 = random_density_matrix(np.random.default_rng(3))
        assert r1.close_to(r2)

    def test_pure_flag(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            rho = random_density_matrix(rng, pure=True)
            assert max(rho.eigvals()) == pytest.approx(1.0, abs=1e-12)

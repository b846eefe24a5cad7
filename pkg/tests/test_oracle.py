import math

import numpy as np
import pytest

from ergoloss.channels import CentralSpinChannel, CentralSpinParams, central_spin_kernels
from ergoloss.oracle import (
    MAX_BATH_LEVELS,
    bath_thermal_weights,
    block_gaps,
    block_structure_violation,
    build_hamiltonian,
    oracle_evolve,
)
from ergoloss.qstate import DensityMatrix

RHO0 = DensityMatrix.from_populations(0.6, 0.25 - 0.15j)


def params(**kw):
    base = dict(N=4, omega0=1.0, omega=0.7, alpha=0.5, T=1.0, include_zz=True)
    base.update(kw)
    return CentralSpinParams(**base)


class TestHamiltonian:
    def test_hermitian(self):
        h = build_hamiltonian(params())
        assert np.abs(h.matrix - h.matrix.conj().T).max() < 1e-12

    def test_dimension(self):
        h = build_hamiltonian(params(N=6))
        assert h.dimension == 2 * (6 + 2)
        assert h.matrix.shape == (16, 16)

    def test_block_structure_exactly_zero(self):
        for zz in (True, False):
            h = build_hamiltonian(params(N=5, include_zz=zz))
            assert block_structure_violation(h) == 0.0

    def test_no_coupling_is_diagonal(self):
        h = build_hamiltonian(params(alpha=0.0))
        assert np.abs(h.matrix - np.diag(np.diag(h.matrix))).max() == 0.0

    def test_block_gaps_match_kernels(self):
        p = CentralSpinParams(N=2, omega0=1.0, omega=2.0, alpha=0.5, T=1.0)
        h = build_hamiltonian(p)
        k = central_spin_kernels(p)
        gaps, gaps_prime = block_gaps(h)
        assert np.allclose(gaps, k.eta, atol=1e-10)
        assert np.allclose(gaps_prime, k.eta_prime, atol=1e-10)

    @pytest.mark.parametrize("zz", [True, False])
    def test_block_gaps_match_kernels_generic(self, zz):
        p = params(N=7, omega0=1.3, omega=0.4, alpha=0.9, include_zz=zz)
        h = build_hamiltonian(p)
        k = central_spin_kernels(p)
        gaps, gaps_prime = block_gaps(h)
        assert np.allclose(gaps, k.eta, atol=1e-10)
        assert np.allclose(gaps_prime, k.eta_prime, atol=1e-10)


class TestBathEnsemble:
    def test_weights_normalized(self):
        w = bath_thermal_weights(params(N=12, T=0.3))
        assert w.shape == (13,)
        assert w.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(w >= 0.0)


class TestOracleEvolve:
    def test_t0_identity(self):
        out = oracle_evolve(params(), RHO0, 0.0)
        assert np.allclose(out.mat, RHO0.mat, atol=1e-12)

    def test_unitarity_preserves_trace_and_hermiticity(self):
        p = params(N=6)
        for t in (0.5, 3.0, 17.0):
            out = oracle_evolve(p, RHO0, t)
            assert np.trace(out.mat).real == pytest.approx(1.0, abs=1e-12)
            assert np.abs(out.mat - out.mat.conj().T).max() < 1e-12

    def test_populations_conserved_without_coupling(self):
        p = params(alpha=0.0)
        out = oracle_evolve(p, RHO0, 4.2)
        assert out.rho11 == pytest.approx(RHO0.rho11, abs=1e-12)

    def test_negative_time_rejected(self):
        with pytest.raises(ValueError):
            oracle_evolve(params(), RHO0, -1.0)

    def test_bath_cap_enforced(self):
        with pytest.raises(ValueError):
            oracle_evolve(params(N=MAX_BATH_LEVELS + 1), RHO0, 1.0)

    @pytest.mark.parametrize("zz", [True, False])
    @pytest.mark.parametrize("T", [0.5, 10.0, math.inf])
    def test_agrees_with_closed_form(self, zz, T):
        p = params(N=4, omega0=1.7, omega=0.9, alpha=0.8, T=T, include_zz=zz)
        ch = CentralSpinChannel(p)
        rng = np.random.default_rng(0)
        for t in rng.uniform(0.0, 30.0, size=20):
            got = ch.evolve(RHO0, float(t))
            want = oracle_evolve(p, RHO0, float(t))
            assert np.abs(got.mat - want.mat).max() < 1e-8

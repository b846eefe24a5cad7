"""Brute-force verification of the central-spin closed form.

Builds the qubit (x) truncated-boson Hamiltonian on Fock levels 0..N+1,
evolves the joint state by exact diagonalization and traces out the bath.
The flip interaction only connects |1,n> with |0,n+1>, so those pairs (plus
the singletons |0,0> and |1,N+1>) are invariant subspaces; the truncation at
level N+1 is therefore exact for bath states populating levels 0..N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import CentralSpinParams, boltzmann_weights
from .qstate import DensityMatrix

# Dense exponentiation cap; dimension is 2 (N + 2).
MAX_BATH_LEVELS = 64


@dataclass(frozen=True)
class TruncatedHamiltonian:
    params: CentralSpinParams
    matrix: np.ndarray
    dimension: int

    def index(self, qubit_excited: bool, n: int) -> int:
        """Flat index of |1,n> (qubit_excited) or |0,n>."""
        levels = self.params.N + 2
        return (0 if qubit_excited else 1) * levels + n


def build_hamiltonian(p: CentralSpinParams) -> TruncatedHamiltonian:
    """Dimensionless H_S + H_B + H_I on the truncated product space."""
    N = p.N
    levels = N + 2
    dim = 2 * levels
    H = np.zeros((dim, dim), dtype=complex)

    def idx(excited: bool, n: int) -> int:
        return (0 if excited else 1) * levels + n

    sqrtN = math.sqrt(N)
    for n in range(levels):
        bath = -p.omega * (1.0 - n / N)
        H[idx(True, n), idx(True, n)] = p.omega0 + bath
        H[idx(False, n), idx(False, n)] = -p.omega0 + bath
        if p.include_zz:
            H[idx(True, n), idx(True, n)] += -p.alpha * sqrtN * (1.0 - n / N)
            H[idx(False, n), idx(False, n)] += p.alpha * sqrtN * (1.0 - n / N)
        if n + 1 < levels:
            # 2 alpha <0,n+1| sigma_- b' (1 - b'b/2N)^{1/2} |1,n>
            v = 2.0 * p.alpha * math.sqrt((n + 1) * max(1.0 - n / (2.0 * N), 0.0))
            H[idx(False, n + 1), idx(True, n)] = v
            H[idx(True, n), idx(False, n + 1)] = v
    return TruncatedHamiltonian(params=p, matrix=H, dimension=dim)


def block_structure_violation(h: TruncatedHamiltonian) -> float:
    """Max |entry| outside the invariant blocks {|1,n>, |0,n+1>}; exactly 0."""
    mask = np.zeros_like(h.matrix, dtype=bool)
    for n in range(h.params.N + 2):
        mask[h.index(True, n), h.index(True, n)] = True
        mask[h.index(False, n), h.index(False, n)] = True
        if n + 1 < h.params.N + 2:
            mask[h.index(True, n), h.index(False, n + 1)] = True
            mask[h.index(False, n + 1), h.index(True, n)] = True
    off = np.where(mask, 0.0, np.abs(h.matrix))
    return float(off.max())


def block_gaps(h: TruncatedHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-gaps of the blocks {|1,n>, |0,n+1>} for n = 0..N, in the two
    labellings matching the closed form's eta (excited branch, n = 0..N) and
    eta' (ground branch, n = 0..N; n = 0 is the |0,0> singleton, gap by the
    same closed pattern)."""
    p = h.params
    gaps = np.empty(p.N + 1)
    for n in range(p.N + 1):
        i, j = h.index(True, n), h.index(False, n + 1)
        diff = h.matrix[i, i].real - h.matrix[j, j].real
        gaps[n] = math.hypot(diff, 2.0 * abs(h.matrix[i, j]))
    return gaps, np.concatenate(([abs(2.0 * _singleton_gap(h))], gaps[:-1]))


def _singleton_gap(h: TruncatedHamiltonian) -> float:
    # eta'(0) degenerates to twice the half-detuning of the |0,0> singleton.
    p = h.params
    x = p.omega0 - p.omega / (2.0 * p.N)
    if p.include_zz:
        x -= p.alpha * math.sqrt(p.N) * (1.0 + 1.0 / (2.0 * p.N))
    return x


def bath_thermal_weights(p: CentralSpinParams) -> np.ndarray:
    """Boltzmann weights of the initial bath state over Fock levels 0..N."""
    weights, _ = boltzmann_weights(p)
    return weights


def oracle_evolve(p: CentralSpinParams, rho0: DensityMatrix, t: float) -> DensityMatrix:
    """Exact reduced state: unitary evolution of rho0 (x) rho_bath, bath traced out."""
    if t < 0.0:
        raise ValueError(f"time must be >= 0, got {t}")
    if p.N > MAX_BATH_LEVELS:
        raise ValueError(f"N = {p.N} exceeds the dense-exponentiation cap {MAX_BATH_LEVELS}")
    h = build_hamiltonian(p)
    evals, evecs = np.linalg.eigh(h.matrix)
    U = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T

    levels = p.N + 2
    weights = bath_thermal_weights(p)
    rho_bath = np.zeros((levels, levels), dtype=complex)
    rho_bath[: p.N + 1, : p.N + 1] = np.diag(weights)
    rho_total = np.kron(rho0.mat, rho_bath)
    rho_t = U @ rho_total @ U.conj().T

    reduced = np.empty((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            block = rho_t[a * levels : (a + 1) * levels, b * levels : (b + 1) * levels]
            reduced[a, b] = np.trace(block)
    return DensityMatrix(reduced)

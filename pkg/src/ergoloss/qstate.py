"""Single-qubit density matrices in the {|1> (excited), |0> (ground)} basis.

Matrix index 0 is the excited level |1> and index 1 is the ground level |0>,
so rho11 = <1|rho|1> is the excited population and rho22 = <0|rho|0> the
ground population.  All model parameters are dimensionless: time, temperature
and Hamiltonian are measured in units of the overall coupling frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
# Slightly loose PSD floor: long Boltzmann-weighted sums over bath levels
# accumulate O(1e-14) noise per term.
PSD_TOL = 1e-10

EXCITED = np.array([1.0, 0.0], dtype=complex)
GROUND = np.array([0.0, 1.0], dtype=complex)


class StateValidationError(ValueError):
    """Raised when a matrix fails the density-matrix invariants."""


@dataclass(frozen=True)
class BlochAngles:
    """Polar/azimuthal angles of a pure qubit state, theta in [0, pi], phi in [0, 2*pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not (0.0 <= self.phi < 2.0 * math.pi):
            raise ValueError(f"phi must lie in [0, 2*pi), got {self.phi}")


@dataclass(frozen=True)
class DensityMatrix:
    """An immutable, validated 2x2 density matrix."""

    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.mat, dtype=complex)
        if m.shape != (2, 2):
            raise StateValidationError(f"expected a 2x2 matrix, got shape {m.shape}")
        if abs(m[0, 1] - np.conj(m[1, 0])) > HERMITICITY_TOL:
            raise StateValidationError("matrix is not Hermitian")
        # Symmetrize away sub-tolerance Hermiticity noise before validating.
        m = 0.5 * (m + m.conj().T)
        tr = m[0, 0].real + m[1, 1].real
        if abs(tr - 1.0) > TRACE_TOL:
            raise StateValidationError(f"trace is {tr}, expected 1")
        lo = min(_herm_eigvals(m))
        if lo < -PSD_TOL:
            raise StateValidationError(f"negative eigenvalue {lo}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def rho11(self) -> float:
        """Excited-state population <1|rho|1>."""
        return self.mat[0, 0].real

    @property
    def rho22(self) -> float:
        """Ground-state population <0|rho|0>."""
        return self.mat[1, 1].real

    @property
    def rho12(self) -> complex:
        return self.mat[0, 1]

    @property
    def rho21(self) -> complex:
        return self.mat[1, 0]

    def bloch(self) -> np.ndarray:
        """Bloch vector (rx, ry, rz) with rz = rho11 - rho22."""
        return np.array(
            [2.0 * self.rho12.real, -2.0 * self.rho12.imag, self.rho11 - self.rho22]
        )

    def eigvals(self) -> tuple[float, float]:
        """Eigenvalues, descending."""
        return _herm_eigvals(self.mat)

    def close_to(self, other: "DensityMatrix", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.mat, other.mat, atol=atol, rtol=0.0))

    @staticmethod
    def from_populations(rho11: float, rho12: complex = 0.0) -> "DensityMatrix":
        return DensityMatrix(
            np.array([[rho11, rho12], [np.conj(rho12), 1.0 - rho11]], dtype=complex)
        )

    @staticmethod
    def from_bloch(r: np.ndarray) -> "DensityMatrix":
        rx, ry, rz = (float(v) for v in r)
        return DensityMatrix(
            np.array(
                [
                    [0.5 * (1.0 + rz), 0.5 * (rx - 1j * ry)],
                    [0.5 * (rx + 1j * ry), 0.5 * (1.0 - rz)],
                ]
            )
        )

    @staticmethod
    def maximally_mixed() -> "DensityMatrix":
        return DensityMatrix(0.5 * np.eye(2, dtype=complex))


def _herm_eigvals(m: np.ndarray) -> tuple[float, float]:
    s = 0.5 * (m[0, 0].real + m[1, 1].real)
    r = math.hypot(0.5 * (m[0, 0].real - m[1, 1].real), abs(m[0, 1]))
    return s + r, s - r


def pure_from_bloch(angles: BlochAngles) -> DensityMatrix:
    """Projector onto cos(theta/2)|1> + sin(theta/2) e^{-i phi}|0>."""
    psi = bloch_vector_state(angles)
    return DensityMatrix(np.outer(psi, psi.conj()))


def bloch_vector_state(angles: BlochAngles) -> np.ndarray:
    return np.array(
        [
            math.cos(angles.theta / 2.0),
            math.sin(angles.theta / 2.0) * np.exp(-1j * angles.phi),
        ],
        dtype=complex,
    )


def antipodal_pair(angles: BlochAngles) -> tuple[DensityMatrix, DensityMatrix]:
    """The orthogonal pure pair at (theta, phi) and its Bloch-sphere antipode.

    The second member is sin(theta/2)|1> - cos(theta/2) e^{-i phi}|0>; the two
    projectors sum to the identity.
    """
    psi = bloch_vector_state(angles)
    chi = np.array(
        [
            math.sin(angles.theta / 2.0),
            -math.cos(angles.theta / 2.0) * np.exp(-1j * angles.phi),
        ],
        dtype=complex,
    )
    return DensityMatrix(np.outer(psi, psi.conj())), DensityMatrix(np.outer(chi, chi.conj()))


def thermal_qubit(omega0: float, T: float) -> DensityMatrix:
    """Thermal state of a qubit with Hamiltonian omega0 * sigma_z at temperature T.

    Ground population p1 = (1 + tanh(omega0 / T)) / 2.  T may be math.inf
    (maximally mixed) or exactly 0, which returns the pure ground state as the
    explicit zero-temperature limit.  Negative temperatures are rejected.
    """
    if T < 0:
        raise ValueError(f"temperature must be >= 0, got {T}")
    if T == 0.0:
        p1 = 1.0
    elif math.isinf(T):
        p1 = 0.5
    else:
        p1 = 0.5 * (1.0 + math.tanh(omega0 / T))
    return DensityMatrix.from_populations(1.0 - p1)


def thermal_ground_population(omega0: float, T: float) -> float:
    """Ground population of thermal_qubit(omega0, T)."""
    return thermal_qubit(omega0, T).rho22


def eig_hermitian_2x2(m: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigendecomposition of a 2x2 Hermitian matrix.

    Returns (eigenvalues descending, eigenvector columns).  Satisfies
    V @ diag(w) @ V^dagger == m to ~1e-12.
    """
    m = np.asarray(m, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected 2x2, got {m.shape}")
    if abs(m[0, 1] - np.conj(m[1, 0])) > tol or abs(m[0, 0].imag) > tol or abs(m[1, 1].imag) > tol:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = m[0, 0].real
    d = m[1, 1].real
    b = m[0, 1]
    s = 0.5 * (a + d)
    r = math.hypot(0.5 * (a - d), abs(b))
    w = np.array([s + r, s - r])
    if r < 1e-15:
        return w, np.eye(2, dtype=complex)
    # For eigenvalue lam, (b, lam - a) and (lam - d, conj(b)) are both
    # eigenvectors; pick the better-conditioned one.
    vecs = []
    for lam in w:
        v1 = np.array([b, lam - a])
        v2 = np.array([lam - d, np.conj(b)])
        v = v1 if np.linalg.norm(v1) >= np.linalg.norm(v2) else v2
        vecs.append(v / np.linalg.norm(v))
    V = np.column_stack(vecs)
    return w, V


def random_density_matrix(rng: np.random.Generator, pure: bool = False) -> DensityMatrix:
    """Sample a random state: Haar pure state, or uniform over the Bloch ball."""
    u = rng.normal(size=3)
    u /= np.linalg.norm(u)
    r = 1.0 if pure else rng.random() ** (1.0 / 3.0)
    return DensityMatrix.from_bloch(r * u)

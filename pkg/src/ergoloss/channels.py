"""Closed-form reduced dynamics for three open-qubit models.

All three channels are phase covariant: populations evolve affinely and the
coherence is multiplied by a complex factor,

    rho11(t) = a(t) rho11(0) + b(t),      rho12(t) = delta(t) rho12(0).

``affine(t)`` exposes the triple (a, b, delta) and ``affine_average`` its
infinite-time Cesaro average, which is what the ergodicity machinery builds
on.

The central-spin map is the exact reduced dynamics of one qubit coupled to a
collective bosonic bath mode truncated at level N+1: each 2x2 block
{|1,n>, |0,n+1>} of the total Hamiltonian is dynamically closed, so the
population transfer amplitudes and coherence factor are Boltzmann-weighted
sums of two-level Rabi terms.  The per-level frequency kernels eta, eta' are
the block eigen-gaps and lam, lam' the block traces; theta, theta' are the
block detunings entering the coherence factor.
"""

from __future__ import annotations

import abc
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import DensityMatrix, thermal_qubit

# Two block gaps closer than this at equal phase alignment signal the
# resonance degeneracies that keep time-averaged coherence alive; those
# parameter sets are rejected rather than modelled.
RESONANCE_GAP = 1e-9


class ResonantParameterError(ValueError):
    """Raised for bath parameters with degenerate block frequencies."""


def _check_temperature(T: float) -> None:
    if not (T > 0.0 or math.isinf(T)):
        raise ValueError(f"temperature must be > 0 or +inf, got {T}")


@dataclass(frozen=True)
class MarkovianThermalParams:
    """Damped qubit relaxing to the bath temperature: decay rate gamma,
    splitting omega0, temperature T."""

    gamma: float
    omega0: float
    T: float

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError("gamma must be > 0")
        if self.omega0 <= 0.0:
            raise ValueError("omega0 must be > 0")
        _check_temperature(self.T)

    @property
    def planck_n(self) -> float:
        """Mean thermal occupation 1/(exp(omega0/T) - 1); inf at T = inf."""
        if math.isinf(self.T):
            return math.inf
        x = self.omega0 / self.T
        if x > 700.0:  # exp overflow; occupation is numerically zero
            return 0.0
        return 1.0 / math.expm1(x)


@dataclass(frozen=True)
class DephasingParams:
    """Pure dephasing at precession omega with rate gamma_d.

    T fixes the thermal reference state used by the ergodicity measures; it
    does not enter the dynamics.  Defaults to infinite temperature
    (maximally mixed reference).
    """

    omega: float
    gamma_d: float
    T: float = math.inf

    def __post_init__(self):
        if self.gamma_d <= 0.0:
            raise ValueError("gamma_d must be > 0")
        _check_temperature(self.T)


@dataclass(frozen=True)
class CentralSpinParams:
    """Qubit coupled to a collective N-spin bath: splittings omega0 (system)
    and omega (bath), coupling alpha, bath temperature T.  include_zz=False
    drops the sigma_z--sigma_z part of the interaction."""

    N: int
    omega0: float
    omega: float
    alpha: float
    T: float
    include_zz: bool = True

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        _check_temperature(self.T)


@dataclass(frozen=True)
class CentralSpinKernels:
    """Per-bath-level kernels, arrays indexed by n = 0..N."""

    eta: np.ndarray
    eta_prime: np.ndarray
    theta: np.ndarray
    theta_prime: np.ndarray
    lam: np.ndarray
    lam_prime: np.ndarray
    weights: np.ndarray
    Z: float
    # squared flip couplings 4 alpha^2 (n+1)(1 - n/2N) and the primed analogue
    coupling_sq: np.ndarray = field(repr=False, default=None)
    coupling_sq_prime: np.ndarray = field(repr=False, default=None)


def boltzmann_weights(p: CentralSpinParams) -> tuple[np.ndarray, float]:
    """Normalized bath-level weights exp(-(omega/T)(n/N - 1))/Z and Z."""
    n = np.arange(p.N + 1)
    if math.isinf(p.T):
        expo = np.zeros(p.N + 1)
    else:
        expo = -(p.omega / p.T) * (n / p.N - 1.0)
    shifted = np.exp(expo - expo.max())
    z_shifted = shifted.sum()
    weights = shifted / z_shifted
    # Z in the stated (unshifted) normalization; may overflow at tiny T, in
    # which case only the normalized weights are meaningful.
    with np.errstate(over="ignore"):
        Z = float(z_shifted * np.exp(expo.max()))
    return weights, Z


def central_spin_kernels(p: CentralSpinParams) -> CentralSpinKernels:
    """Frequency and weight kernels of the exact central-spin reduced dynamics."""
    n = np.arange(p.N + 1, dtype=float)
    N = float(p.N)
    half_det = p.omega0 - p.omega / (2.0 * N)
    if p.include_zz:
        x = half_det - p.alpha * math.sqrt(N) * (1.0 - (2.0 * n + 1.0) / (2.0 * N))
        xp = half_det - p.alpha * math.sqrt(N) * (1.0 - (2.0 * n - 1.0) / (2.0 * N))
        lam = -2.0 * p.omega * (1.0 - (2.0 * n + 1.0) / (2.0 * N)) - p.alpha / math.sqrt(N)
        lam_p = -2.0 * p.omega * (1.0 - (2.0 * n - 1.0) / (2.0 * N)) - p.alpha / math.sqrt(N)
    else:
        x = np.full(p.N + 1, half_det)
        xp = np.full(p.N + 1, half_det)
        lam = -2.0 * p.omega * (1.0 - (2.0 * n + 1.0) / (2.0 * N))
        lam_p = -2.0 * p.omega * (1.0 - (2.0 * n - 1.0) / (2.0 * N))
    csq = 4.0 * p.alpha**2 * (n + 1.0) * (1.0 - n / (2.0 * N))
    csq_p = 4.0 * p.alpha**2 * n * (1.0 - (n - 1.0) / (2.0 * N))
    eta = 2.0 * np.sqrt(x**2 + csq)
    eta_p = 2.0 * np.sqrt(xp**2 + csq_p)
    weights, Z = boltzmann_weights(p)
    return CentralSpinKernels(
        eta=eta,
        eta_prime=eta_p,
        theta=2.0 * x,
        theta_prime=-2.0 * xp,
        lam=lam,
        lam_prime=lam_p,
        weights=weights,
        Z=Z,
        coupling_sq=csq,
        coupling_sq_prime=csq_p,
    )


class Channel(abc.ABC):
    """Common contract: evolve, analytic time average, thermal reference."""

    @abc.abstractmethod
    def affine(self, t: float) -> tuple[float, float, complex]:
        """(a, b, delta) of the map at time t."""

    @abc.abstractmethod
    def affine_average(self) -> tuple[float, float, complex]:
        """(a, b, delta) of the infinite-time-averaged map."""

    @abc.abstractmethod
    def thermal_state(self) -> DensityMatrix:
        """Thermal reference state at the channel's own parameters."""

    def _apply(self, abd, rho0: DensityMatrix) -> DensityMatrix:
        a, b, delta = abd
        return DensityMatrix.from_populations(
            a * rho0.rho11 + b, delta * rho0.rho12
        )

    def evolve(self, rho0: DensityMatrix, t: float) -> DensityMatrix:
        if t < 0.0:
            raise ValueError(f"time must be >= 0, got {t}")
        return self._apply(self.affine(t), rho0)

    def time_average(self, rho0: DensityMatrix) -> DensityMatrix:
        return self._apply(self.affine_average(), rho0)


class MarkovianThermalChannel(Channel):
    """Closed-form solution of the thermal Lindblad master equation:
    populations relax at rate gamma(2n+1) toward the bath occupation,
    coherence decays at half that rate while precessing at 2 omega0."""

    def __init__(self, params: MarkovianThermalParams):
        self.params = params
        n = params.planck_n
        if math.isinf(n):
            self._rate = math.inf
            self._p_exc = 0.5
        else:
            self._rate = params.gamma * (2.0 * n + 1.0)
            self._p_exc = n / (2.0 * n + 1.0)

    def affine(self, t: float) -> tuple[float, float, complex]:
        if t == 0.0:
            return 1.0, 0.0, 1.0 + 0.0j
        decay = math.exp(-self._rate * t) if math.isfinite(self._rate) else 0.0
        a = decay
        b = self._p_exc * (1.0 - decay)
        delta = math.sqrt(decay) * np.exp(-2.0j * self.params.omega0 * t)
        return a, b, complex(delta)

    def affine_average(self) -> tuple[float, float, complex]:
        return 0.0, self._p_exc, 0.0j

    def thermal_state(self) -> DensityMatrix:
        return DensityMatrix.from_populations(self._p_exc)


class DephasingChannel(Channel):
    """Diagonal entries frozen, coherence damped as exp(-2(i omega + gamma_d) t)."""

    def __init__(self, params: DephasingParams):
        self.params = params

    def affine(self, t: float) -> tuple[float, float, complex]:
        delta = np.exp(-2.0 * (1j * self.params.omega + self.params.gamma_d) * t)
        return 1.0, 0.0, complex(delta)

    def affine_average(self) -> tuple[float, float, complex]:
        return 1.0, 0.0, 0.0j

    def thermal_state(self) -> DensityMatrix:
        return thermal_qubit(self.params.omega, self.params.T)


class CentralSpinChannel(Channel):
    """Exact non-Markovian reduced dynamics of the central-spin model.

    theta1(t)/theta2(t) are the thermally weighted excitation-transfer
    probabilities out of |1> and |0>; delta(t) is the coherence factor.
    """

    def __init__(self, params: CentralSpinParams):
        self.params = params
        self.kernels = central_spin_kernels(params)
        self._check_resonances()

    def _check_resonances(self) -> None:
        # Time-averaged coherence vanishes unless some eta(n) == eta'(n) with
        # aligned lam phases; detect near-degeneracy and refuse.
        k = self.kernels
        gap = np.abs(k.eta - k.eta_prime)
        phase = np.abs(k.lam - k.lam_prime)
        degenerate = (gap < RESONANCE_GAP) & (phase < RESONANCE_GAP) & (k.weights > 1e-15)
        if np.any(degenerate):
            raise ResonantParameterError(
                "bath parameters are resonance-degenerate; time-averaged "
                "coherence would not vanish"
            )

    def theta1(self, t) -> np.ndarray | float:
        """Probability weight transferred out of the excited level by time t."""
        k = self.kernels
        t = np.asarray(t, dtype=float)
        s = _sin_over_half(k.eta, t)
        out = np.sum(k.coupling_sq * s**2 * k.weights, axis=-1)
        return out if out.ndim else float(out)

    def theta2(self, t) -> np.ndarray | float:
        """Probability weight transferred out of the ground level by time t."""
        k = self.kernels
        t = np.asarray(t, dtype=float)
        s = _sin_over_half(k.eta_prime, t)
        out = np.sum(k.coupling_sq_prime * s**2 * k.weights, axis=-1)
        return out if out.ndim else float(out)

    def delta(self, t) -> np.ndarray | complex:
        """Coherence multiplier: product of the two block survival amplitudes."""
        k = self.kernels
        t = np.asarray(t, dtype=float)
        tc = t[..., None]
        surv_exc = np.cos(k.eta * tc / 2.0) - 0.5j * k.theta * _sin_over_half(k.eta, t)
        surv_gnd = np.cos(k.eta_prime * tc / 2.0) - 0.5j * k.theta_prime * _sin_over_half(
            k.eta_prime, t
        )
        phase = np.exp(-0.5j * (k.lam - k.lam_prime) * tc)
        out = np.sum(phase * surv_exc * np.conj(surv_gnd) * k.weights, axis=-1)
        return out if out.ndim else complex(out)

    def theta_bars(self) -> tuple[float, float]:
        """Infinite-time averages of theta1, theta2 (sin^2 averages to 1/2)."""
        k = self.kernels
        t1 = float(np.sum(2.0 * k.coupling_sq / k.eta**2 * k.weights))
        with np.errstate(divide="ignore", invalid="ignore"):
            terms = np.where(
                k.coupling_sq_prime > 0.0,
                2.0 * k.coupling_sq_prime / k.eta_prime**2,
                0.0,
            )
        t2 = float(np.sum(terms * k.weights))
        return t1, t2

    def affine(self, t: float) -> tuple[float, float, complex]:
        th1 = self.theta1(t)
        th2 = self.theta2(t)
        return 1.0 - th1 - th2, th2, self.delta(t)

    def affine_average(self) -> tuple[float, float, complex]:
        tb1, tb2 = self.theta_bars()
        return 1.0 - tb1 - tb2, tb2, 0.0j

    def thermal_state(self) -> DensityMatrix:
        return thermal_qubit(self.params.omega0, self.params.T)


def _sin_over_half(freq: np.ndarray, t) -> np.ndarray:
    """sin(freq * t / 2) / (freq / 2), with the t limit at freq -> 0."""
    t = np.asarray(t, dtype=float)[..., None]
    arg = freq * t / 2.0
    small = np.abs(freq) < 1e-12
    safe = np.where(small, 1.0, freq)
    return np.where(small, t * np.ones_like(arg), 2.0 * np.sin(arg) / safe)


def theta_bars_saturated(p: CentralSpinParams) -> tuple[float, float]:
    """Strong-coupling (alpha -> inf) limits of the time-averaged transfer weights.

    Each summand is the large-alpha balance of squared detuning against
    squared flip coupling inside the block gap.  Without the z-z interaction
    the detuning stays finite, every resonant summand saturates at
    weight / 2 and the totals approach 1/2.  The limits do not depend on
    p.alpha.
    """
    n = np.arange(p.N + 1, dtype=float)
    N = float(p.N)
    weights, _ = boltzmann_weights(p)
    if p.include_zz:
        d = 1.0 - (2.0 * n + 1.0) / (2.0 * N)
        dp = 1.0 - (2.0 * n - 1.0) / (2.0 * N)
        c = (n + 1.0) * (1.0 - n / (2.0 * N))
        cp = n * (1.0 - (n - 1.0) / (2.0 * N))
        s1 = float(np.sum(2.0 * weights / (4.0 + N * d**2 / c)))
        terms = np.where(cp > 0.0, 2.0 / (4.0 + N * dp**2 / np.where(cp > 0.0, cp, 1.0)), 0.0)
        s2 = float(np.sum(terms * weights))
    else:
        s1 = 0.5
        s2 = float(0.5 * np.sum(weights[1:]))
    return s1, s2


# Function-style conveniences over the channel classes.


def markovian_evolve(p: MarkovianThermalParams, rho0: DensityMatrix, t: float) -> DensityMatrix:
    return MarkovianThermalChannel(p).evolve(rho0, t)


def markovian_time_average(p: MarkovianThermalParams, rho0: DensityMatrix) -> DensityMatrix:
    return MarkovianThermalChannel(p).time_average(rho0)


def dephasing_evolve(p: DephasingParams, rho0: DensityMatrix, t: float) -> DensityMatrix:
    return DephasingChannel(p).evolve(rho0, t)


def dephasing_time_average(p: DephasingParams, rho0: DensityMatrix) -> DensityMatrix:
    return DephasingChannel(p).time_average(rho0)


def central_spin_evolve(p: CentralSpinParams, rho0: DensityMatrix, t: float) -> DensityMatrix:
    return CentralSpinChannel(p).evolve(rho0, t)


def central_spin_time_average(p: CentralSpinParams, rho0: DensityMatrix) -> DensityMatrix:
    return CentralSpinChannel(p).time_average(rho0)


# ---------------------------------------------------------------------------
# JSON (de)serialization -- the CLI's channel config schema
# ---------------------------------------------------------------------------

_MODEL_KEYS = {
    "markovian_thermal": ("gamma", "omega0", "T"),
    "dephasing": ("omega", "gamma_d", "T"),
    "central_spin": ("N", "omega0", "omega", "alpha", "T", "include_zz"),
}


def params_to_dict(params) -> dict:
    if isinstance(params, MarkovianThermalParams):
        model = "markovian_thermal"
    elif isinstance(params, DephasingParams):
        model = "dephasing"
    elif isinstance(params, CentralSpinParams):
        model = "central_spin"
    else:
        raise TypeError(f"unknown parameter type {type(params)!r}")
    out = {"model": model}
    for key in _MODEL_KEYS[model]:
        val = getattr(params, key)
        out[key] = "inf" if isinstance(val, float) and math.isinf(val) else val
    return out


def params_from_dict(data: dict):
    data = dict(data)
    model = data.pop("model", None)
    if model not in _MODEL_KEYS:
        raise ValueError(f"unknown channel model {model!r}")
    kwargs = {}
    for key in _MODEL_KEYS[model]:
        if key in data:
            val = data.pop(key)
            if val == "inf":
                val = math.inf
            kwargs[key] = val
    if data:
        raise ValueError(f"unexpected channel fields: {sorted(data)}")
    cls = {
        "markovian_thermal": MarkovianThermalParams,
        "dephasing": DephasingParams,
        "central_spin": CentralSpinParams,
    }[model]
    return cls(**kwargs)


def params_to_json(params) -> str:
    return json.dumps(params_to_dict(params))


def params_from_json(text: str):
    return params_from_dict(json.loads(text))


def make_channel(params) -> Channel:
    if isinstance(params, MarkovianThermalParams):
        return MarkovianThermalChannel(params)
    if isinstance(params, DephasingParams):
        return DephasingChannel(params)
    if isinstance(params, CentralSpinParams):
        return CentralSpinChannel(params)
    raise TypeError(f"unknown parameter type {type(params)!r}")


def random_channel(rng: np.random.Generator) -> Channel:
    """A random CPTP channel drawn from the three implemented families."""
    kind = rng.integers(3)
    temps = (0.5, 1.0, 10.0, math.inf)
    if kind == 0:
        params = MarkovianThermalParams(
            gamma=float(rng.uniform(0.1, 2.0)),
            omega0=float(rng.uniform(0.1, 3.0)),
            T=temps[rng.integers(4)],
        )
    elif kind == 1:
        params = DephasingParams(
            omega=float(rng.uniform(0.0, 3.0)),
            gamma_d=float(rng.uniform(0.05, 2.0)),
            T=temps[rng.integers(4)],
        )
    else:
        params = CentralSpinParams(
            N=int(rng.integers(1, 9)),
            omega0=float(rng.uniform(0.1, 5.0)),
            omega=float(rng.uniform(0.1, 5.0)),
            alpha=float(rng.uniform(0.01, 2.0)),
            T=temps[rng.integers(4)],
            include_zz=bool(rng.integers(2)),
        )
    return make_channel(params)

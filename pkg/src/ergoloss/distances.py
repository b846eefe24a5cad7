"""Distinguishability measures on qubit states and randomized axiom checks.

Five measures are provided: trace distance, Bures distance, Hellinger
distance, quantum relative entropy (natural logarithm) and the square root of
the Jensen-Shannon divergence.  The geometric ones are symmetric, satisfy the
triangle inequality and are bounded (trace <= 1, Bures and Hellinger <=
sqrt(2), sqrt-JSD <= sqrt(ln 2)); relative entropy is asymmetric, violates
the triangle inequality and diverges on support mismatch.

All of them contract under completely positive trace-preserving maps, which
``check_axioms`` probes with physically constructed channels rather than
random Kraus sets.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .qstate import DensityMatrix, eig_hermitian_2x2, random_density_matrix

# Support-mismatch detection for relative entropy: sigma eigenvalue below
# EIG_FLOOR whose eigenvector overlaps the support of rho by more than
# SUPPORT_OVERLAP means the entropy diverges.
EIG_FLOOR = 1e-14
SUPPORT_OVERLAP = 1e-12

SQRT2 = math.sqrt(2.0)
SQRT_LN2 = math.sqrt(math.log(2.0))


class Measure(enum.Enum):
    TRACE = "trace"
    BURES = "bures"
    HELLINGER = "hellinger"
    RELATIVE_ENTROPY = "relative_entropy"
    SQRT_JSD = "sqrt_jsd"

    @property
    def is_symmetric(self) -> bool:
        return self is not Measure.RELATIVE_ENTROPY

    @property
    def satisfies_triangle(self) -> bool:
        return self is not Measure.RELATIVE_ENTROPY

    @property
    def is_bounded(self) -> bool:
        return self is not Measure.RELATIVE_ENTROPY

    @property
    def upper_bound(self) -> float:
        """Least upper bound over state pairs; attained by orthogonal pure states."""
        return {
            Measure.TRACE: 1.0,
            Measure.BURES: SQRT2,
            Measure.HELLINGER: SQRT2,
            Measure.RELATIVE_ENTROPY: math.inf,
            Measure.SQRT_JSD: SQRT_LN2,
        }[self]


@dataclass(frozen=True)
class DistanceValue:
    value: float
    divergent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))

    def __float__(self) -> float:
        return math.inf if self.divergent else self.value


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    """Half the trace norm of rho - sigma; equals half the Bloch-vector distance."""
    d = rho.mat - sigma.mat
    # Traceless Hermitian 2x2: eigenvalues are +-sqrt(det(-d)).
    val = math.hypot(d[0, 0].real, abs(d[0, 1]))
    return DistanceValue(val)


def fidelity(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Uhlmann fidelity; for qubits F = tr(rho sigma) + 2 sqrt(det rho det sigma)."""
    tr_prod = np.trace(rho.mat @ sigma.mat).real
    det_r = max(_det2(rho.mat), 0.0)
    det_s = max(_det2(sigma.mat), 0.0)
    return float(min(max(tr_prod + 2.0 * math.sqrt(det_r * det_s), 0.0), 1.0))


def bures_distance(rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    """sqrt(2 (1 - sqrt(F))) with F the Uhlmann fidelity; range [0, sqrt(2)]."""
    f = fidelity(rho, sigma)
    return DistanceValue(math.sqrt(max(2.0 * (1.0 - math.sqrt(f)), 0.0)))


def hellinger_distance(rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    """sqrt(2 (1 - tr(sqrt(rho) sqrt(sigma)))); range [0, sqrt(2)]."""
    aff = np.trace(_sqrtm_psd(rho.mat) @ _sqrtm_psd(sigma.mat)).real
    return DistanceValue(math.sqrt(max(2.0 * (1.0 - aff), 0.0)))


def relative_entropy(rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    """tr[rho (ln rho - ln sigma)], flagged divergent on support mismatch."""
    wr, vr = eig_hermitian_2x2(rho.mat)
    ws, vs = eig_hermitian_2x2(sigma.mat)
    wr = np.clip(wr, 0.0, None)
    ws = np.clip(ws, 0.0, None)
    # overlap[i, j] = |<r_i|s_j>|^2
    overlap = np.abs(vr.conj().T @ vs) ** 2
    for j in range(2):
        if ws[j] <= EIG_FLOOR:
            supp = wr > EIG_FLOOR
            if np.sum(overlap[supp, j]) > SUPPORT_OVERLAP:
                return DistanceValue(math.inf, divergent=True)
    ent = sum(w * math.log(w) for w in wr if w > 0.0)
    cross = 0.0
    for i in range(2):
        if wr[i] <= 0.0:
            continue
        for j in range(2):
            if ws[j] > EIG_FLOOR and overlap[i, j] > 0.0:
                cross += wr[i] * overlap[i, j] * math.log(ws[j])
    return DistanceValue(max(ent - cross, 0.0))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return -sum(w * math.log(w) for w in rho.eigvals() if w > 0.0)


def sqrt_jsd(rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    """Square root of the Jensen-Shannon divergence (natural log); a metric <= sqrt(ln 2)."""
    mid = DensityMatrix(0.5 * (rho.mat + sigma.mat))
    jsd = von_neumann_entropy(mid) - 0.5 * (
        von_neumann_entropy(rho) + von_neumann_entropy(sigma)
    )
    return DistanceValue(math.sqrt(max(jsd, 0.0)))


_DISPATCH = {
    Measure.TRACE: trace_distance,
    Measure.BURES: bures_distance,
    Measure.HELLINGER: hellinger_distance,
    Measure.RELATIVE_ENTROPY: relative_entropy,
    Measure.SQRT_JSD: sqrt_jsd,
}


def distance(measure: Measure, rho: DensityMatrix, sigma: DensityMatrix) -> DistanceValue:
    return _DISPATCH[measure](rho, sigma)


def pinsker_gap(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """S(rho||sigma) - 2 D_T(rho, sigma)^2; nonnegative, +inf when S diverges."""
    s = relative_entropy(rho, sigma)
    if s.divergent:
        return math.inf
    return s.value - 2.0 * trace_distance(rho, sigma).value ** 2


def _det2(m: np.ndarray) -> float:
    return (m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]).real


def _sqrtm_psd(m: np.ndarray) -> np.ndarray:
    """Principal square root of a 2x2 PSD matrix, sqrt(m) = (m + sqrt(det) I) / sqrt(tr + 2 sqrt(det))."""
    det = max(_det2(m), 0.0)
    tr = m[0, 0].real + m[1, 1].real
    s = math.sqrt(det)
    denom = math.sqrt(tr + 2.0 * s)
    if denom < 1e-300:
        return np.zeros((2, 2), dtype=complex)
    return (m + s * np.eye(2)) / denom


# ---------------------------------------------------------------------------
# Randomized axiom verification
# ---------------------------------------------------------------------------


@dataclass
class AxiomCheck:
    passed: bool = True
    worst_violation: float = 0.0
    witness_states: list | None = None

    def update(self, violation: float, witness) -> None:
        if violation > self.worst_violation:
            self.worst_violation = violation
            self.witness_states = witness
        if violation > 0.0:
            self.passed = False


@dataclass
class AxiomReport:
    measure: Measure
    samples: int
    checks: dict = field(default_factory=dict)  # "p1".."p5" -> AxiomCheck

    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json(self) -> str:
        payload = {"measure": self.measure.value, "samples": self.samples}
        for name, c in self.checks.items():
            payload[name] = {
                "pass": c.passed,
                "worst_violation": c.worst_violation,
                "witness_states": c.witness_states,
            }
        return json.dumps(payload, indent=2)


def _mat_json(rho: DensityMatrix) -> list:
    return [[[z.real, z.imag] for z in row] for row in rho.mat.tolist()]


def check_axioms(measure: Measure, samples: int, seed: int = 0) -> AxiomReport:
    """Randomized verification of nonnegativity (P1), identity of
    indiscernibles (P2), CPTP contractivity (P3), symmetry (P4) and the
    triangle inequality (P5).

    Contractivity is probed with the implemented physical channels at random
    parameters and times plus depolarizing mixtures, so every sampled map is
    CPTP by construction.  Violations beyond a 1e-9 numerical allowance are
    recorded with witness states.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    from . import channels  # deferred: channels has no dependency on this module

    rng = np.random.default_rng(seed)
    tol = 1e-9
    # Square-root-type measures amplify O(eps) roundoff in the fidelity or
    # affinity to O(sqrt(eps)) near coincident states; allow that in P2.
    sqrt_type = measure in (Measure.BURES, Measure.HELLINGER, Measure.SQRT_JSD)
    identity_tol = 1e-7 if sqrt_type else tol
    report = AxiomReport(measure=measure, samples=samples)
    checks = {k: AxiomCheck() for k in ("p1", "p2", "p3", "p4", "p5")}

    for _ in range(samples):
        rho = random_density_matrix(rng)
        sig = random_density_matrix(rng, pure=bool(rng.integers(2)))
        kap = random_density_matrix(rng)
        d_rs = float(distance(measure, rho, sig))

        # P1: nonnegativity (and D(rho, rho) finite >= 0).
        checks["p1"].update(-min(d_rs, 0.0), [_mat_json(rho), _mat_json(sig)])

        # P2: D(rho, rho) == 0, and D > 0 for visibly distinct states.
        d_same = float(distance(measure, rho, rho))
        checks["p2"].update(abs(d_same) - identity_tol, [_mat_json(rho)])
        if trace_distance(rho, sig).value > 1e-6 and not math.isinf(d_rs):
            checks["p2"].update(tol - d_rs, [_mat_json(rho), _mat_json(sig)])

        # P3: contractivity under a random physical channel.
        if math.isfinite(d_rs):
            which = rng.integers(3)
            if which == 2:
                lam = rng.random()
                mixed = DensityMatrix.maximally_mixed()
                out_r = DensityMatrix(lam * rho.mat + (1 - lam) * mixed.mat)
                out_s = DensityMatrix(lam * sig.mat + (1 - lam) * mixed.mat)
            else:
                ch = channels.random_channel(rng)
                t = float(rng.uniform(0.0, 20.0))
                out_r = ch.evolve(rho, t)
                out_s = ch.evolve(sig, t)
            d_out = float(distance(measure, out_r, out_s))
            if math.isfinite(d_out):
                checks["p3"].update(d_out - d_rs - tol, [_mat_json(rho), _mat_json(sig)])

        # P4: symmetry.
        d_sr = float(distance(measure, sig, rho))
        if math.isfinite(d_rs) or math.isfinite(d_sr):
            gap = abs(d_rs - d_sr) if math.isfinite(d_rs) and math.isfinite(d_sr) else math.inf
            checks["p4"].update(gap - tol, [_mat_json(rho), _mat_json(sig)])

        # P5: triangle inequality through a random third state.
        d_rk = float(distance(measure, rho, kap))
        d_ks = float(distance(measure, kap, sig))
        if math.isfinite(d_rk) and math.isfinite(d_ks):
            checks["p5"].update(
                d_rs - (d_rk + d_ks) - tol,
                [_mat_json(rho), _mat_json(kap), _mat_json(sig)],
            )

    report.checks = checks
    return report

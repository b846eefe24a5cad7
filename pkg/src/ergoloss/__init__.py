"""Uncertainty relations between information loss and non-ergodicity for
open qubit dynamics: closed-form channels, distance measures, brute-force
oracles, and a CLI for parameter sweeps."""

from .channels import (
    CentralSpinChannel,
    CentralSpinParams,
    DephasingChannel,
    DephasingParams,
    MarkovianThermalChannel,
    MarkovianThermalParams,
    central_spin_evolve,
    central_spin_kernels,
    central_spin_time_average,
    dephasing_evolve,
    dephasing_time_average,
    make_channel,
    markovian_evolve,
    markovian_time_average,
    theta_bars_saturated,
)
from .distances import (
    Measure,
    bures_distance,
    check_axioms,
    hellinger_distance,
    pinsker_gap,
    relative_entropy,
    sqrt_jsd,
    trace_distance,
)
from .ergometrics import (
    Relation,
    avg_info_loss,
    check_relation,
    info_loss_instant,
    non_ergodicity,
    non_ergodicity_max,
    uncertainty_sum_closed_form,
)
from .oracle import build_hamiltonian, oracle_evolve
from .qstate import (
    BlochAngles,
    DensityMatrix,
    antipodal_pair,
    pure_from_bloch,
    thermal_qubit,
)

__version__ = "1.0.0"

__all__ = [
    "BlochAngles",
    "CentralSpinChannel",
    "CentralSpinParams",
    "DensityMatrix",
    "DephasingChannel",
    "DephasingParams",
    "MarkovianThermalChannel",
    "MarkovianThermalParams",
    "Measure",
    "Relation",
    "antipodal_pair",
    "avg_info_loss",
    "build_hamiltonian",
    "bures_distance",
    "central_spin_evolve",
    "central_spin_kernels",
    "central_spin_time_average",
    "check_axioms",
    "check_relation",
    "dephasing_evolve",
    "dephasing_time_average",
    "hellinger_distance",
    "info_loss_instant",
    "make_channel",
    "markovian_evolve",
    "markovian_time_average",
    "non_ergodicity",
    "non_ergodicity_max",
    "oracle_evolve",
    "pinsker_gap",
    "pure_from_bloch",
    "relative_entropy",
    "sqrt_jsd",
    "theta_bars_saturated",
    "thermal_qubit",
    "trace_distance",
    "uncertainty_sum_closed_form",
]

"""Charging dynamics and quantumness metrics for few-cell spin-chain batteries.

Two- and three-cell XXZ chains driven by a local transverse field: closed-form
two-cell evolution, spectral propagation, Lindblad dephasing, and the full set
of figures of merit (ergotropy, charging power, concurrence, normalized l1
coherence, average subsystem purity) with window averages and CSV output.
"""

from .dynamics import (
    GammaFactors,
    ProductStateAngles,
    StateCoefficients,
    Trajectory,
    TwoCellSpectrum,
    closed_form_amplitudes,
    energy_closed_form,
    ergotropy_closed_form_empty,
    evolve_closed_form,
    gamma_factors,
    lindblad_integrate,
    power_closed_form_empty,
    spectral_propagate,
    spectral_trajectory,
    two_cell_spectrum,
)
from .kernels import BACKEND as kernel_backend
from .linalg import (
    EigenDecomposition,
    hermitian_eigensystem,
    kron,
    partial_trace,
)
from .metrics import (
    AveragedSummary,
    ChargeTrace,
    average_purity,
    concurrence_pure_two_qubit,
    ergotropy_general,
    ergotropy_pure,
    instantaneous_power,
    l1_coherence_normalized,
    numerical_power_from_ergotropy,
    passive_state,
    power_operator,
    time_average,
)
from .model import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    BatteryParams,
    BatteryState,
    build_h0,
    build_h_charging,
    build_h_driving,
    build_h_interaction,
    empty_state,
    full_state,
    single_site,
)
from .scenarios import (
    ScenarioConfig,
    SweepGrid,
    TraceFamily,
    default_config,
    emit_csv,
    run_scenario,
)

__version__ = "0.1.0"

__all__ = [
    "AveragedSummary",
    "BatteryParams",
    "BatteryState",
    "ChargeTrace",
    "EigenDecomposition",
    "GammaFactors",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "ProductStateAngles",
    "ScenarioConfig",
    "StateCoefficients",
    "SweepGrid",
    "TraceFamily",
    "Trajectory",
    "TwoCellSpectrum",
    "average_purity",
    "build_h0",
    "build_h_charging",
    "build_h_driving",
    "build_h_interaction",
    "closed_form_amplitudes",
    "concurrence_pure_two_qubit",
    "default_config",
    "emit_csv",
    "empty_state",
    "energy_closed_form",
    "ergotropy_closed_form_empty",
    "ergotropy_general",
    "ergotropy_pure",
    "evolve_closed_form",
    "full_state",
    "gamma_factors",
    "hermitian_eigensystem",
    "instantaneous_power",
    "kernel_backend",
    "kron",
    "l1_coherence_normalized",
    "lindblad_integrate",
    "numerical_power_from_ergotropy",
    "partial_trace",
    "passive_state",
    "power_closed_form_empty",
    "power_operator",
    "run_scenario",
    "single_site",
    "spectral_propagate",
    "spectral_trajectory",
    "time_average",
    "two_cell_spectrum",
]

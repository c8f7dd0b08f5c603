"""Figures of merit: ergotropy, power, concurrence, coherence, purity, averages.

Ergotropy of a general density matrix is computed from sorted spectra: the
optimal discharging unitary maps the k-th largest population of rho onto the
k-th lowest level of the reference Hamiltonian, so the passive energy is the
descending-populations / ascending-levels dot product. No unitary search is
needed; a brute-force permutation oracle lives in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidDensityMatrixError,
    NonUniformGridError,
    NotPureError,
    TooFewSamplesError,
)
from .linalg import as_complex_matrix, hermitian_eigensystem, partial_trace
from .model import BatteryState

# Most negative eigenvalue a density matrix may carry before being rejected.
POSITIVITY_TOL = -1e-8


def ergotropy_pure(psi: BatteryState, h0) -> float:
    """Extractable work of a pure state: <H0> minus the ground energy."""
    v = psi.vector
    h = as_complex_matrix(h0)
    if h.shape[0] != v.size:
        raise DimensionMismatchError(
            f"H0 dim {h.shape[0]} does not match state dim {v.size}")
    e_ground = hermitian_eigensystem(h).values[0]
    return float((v.conj() @ h @ v).real - e_ground)


def _density_spectrum(rho: BatteryState):
    r = rho.density()
    decomp = hermitian_eigensystem(r)
    if decomp.values[0] < POSITIVITY_TOL:
        raise InvalidDensityMatrixError(
            f"density matrix has negative eigenvalue {decomp.values[0]:.3e}")
    return r, decomp


def ergotropy_general(rho: BatteryState, h0) -> float:
    """Extractable work of an arbitrary density matrix via sorted spectra."""
    h = as_complex_matrix(h0)
    r, decomp = _density_spectrum(rho)
    if h.shape[0] != r.shape[0]:
        raise DimensionMismatchError(
            f"H0 dim {h.shape[0]} does not match state dim {r.shape[0]}")
    levels = hermitian_eigensystem(h).values
    populations = decomp.values[::-1]  # descending
    passive_energy = float(populations @ levels)
    return float(np.trace(r @ h).real - passive_energy)


def passive_state(rho: BatteryState, h0) -> BatteryState:
    """The zero-ergotropy state reachable from rho: descending populations on
    ascending H0 levels."""
    h = as_complex_matrix(h0)
    _, decomp = _density_spectrum(rho)
    levels = hermitian_eigensystem(h)
    populations = np.clip(decomp.values[::-1], 0.0, None)
    populations = populations / populations.sum()
    sigma = (levels.vectors * populations) @ levels.vectors.conj().T
    return BatteryState.mixed(sigma, rho.n_cells)


def concurrence_pure_two_qubit(psi: BatteryState) -> float:
    """Wootters concurrence 2 |a_uu a_dd - a_du a_ud| of a pure two-qubit state."""
    v = psi.vector
    if v.size != 4:
        raise DimensionMismatchError("concurrence needs a two-qubit state (dim 4)")
    return float(2.0 * abs(v[3] * v[0] - v[1] * v[2]))


def l1_coherence_normalized(rho: BatteryState) -> float:
    """Sum of |off-diagonal| elements in the product basis, over 2**n - 1."""
    r, _ = _density_spectrum(rho)
    mags = np.abs(r)
    c_max = 2**rho.n_cells - 1
    return float((mags.sum() - np.trace(mags)) / c_max)


def average_purity(rho: BatteryState, n_cells: int | None = None) -> float:
    """Mean single-cell purity tr(rho_n^2); 1 iff every marginal is pure."""
    n = rho.n_cells if n_cells is None else n_cells
    r = rho.density()
    purities = []
    for k in range(n):
        red = partial_trace(r, k, n)
        purities.append(np.trace(red @ red).real)
    return float(np.mean(purities))


def power_operator(h0, h_int) -> np.ndarray:
    """Energy-current operator [H0, H_int] / i; Hermitian by construction."""
    a = as_complex_matrix(h0)
    b = as_complex_matrix(h_int)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    return -1j * (a @ b - b @ a)


def instantaneous_power(rho: BatteryState, p_op) -> float:
    """tr(P rho) for a (Hermitian) power operator."""
    p = as_complex_matrix(p_op)
    r = rho.density()
    if p.shape[0] != r.shape[0]:
        raise DimensionMismatchError(
            f"operator dim {p.shape[0]} does not match state dim {r.shape[0]}")
    return float(np.trace(p @ r).real)


def numerical_power_from_ergotropy(times, ergotropy) -> np.ndarray:
    """dE/dt by finite differences: central interior, one-sided at the ends."""
    t = np.asarray(times, dtype=np.float64)
    e = np.asarray(ergotropy, dtype=np.float64)
    if t.size != e.size:
        raise DimensionMismatchError("times and ergotropy lengths differ")
    if t.size < 3:
        raise TooFewSamplesError("need at least 3 samples for finite differences")
    return np.gradient(e, t, edge_order=2)


def time_average(times, values) -> float:
    """Composite-Simpson mean of values(t) over [times[0], times[-1]]."""
    t = np.asarray(times, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    if t.size != v.size:
        raise DimensionMismatchError("times and values lengths differ")
    if t.size < 3:
        raise TooFewSamplesError("Simpson rule needs at least 3 samples")
    if t.size % 2 == 0:
        raise NonUniformGridError("composite Simpson needs an odd sample count")
    span = t[-1] - t[0]
    if span <= 0:
        raise NonUniformGridError("times must be strictly increasing")
    steps = np.diff(t)
    h = span / (t.size - 1)
    if np.max(np.abs(steps - h)) > 1e-9 * span:
        raise NonUniformGridError("time grid is not uniform")
    integral = (h / 3.0) * (v[0] + v[-1] + 4.0 * v[1:-1:2].sum() + 2.0 * v[2:-1:2].sum())
    return float(integral / span)


@dataclass(frozen=True)
class ChargeTrace:
    """Normalized time series of one charging run.

    times are in 1/Omega units, ergotropy in units of e_max, power in units
    of p_max_parallel = e_max * Omega. correlation holds the concurrence for
    two-cell pure runs, the average purity otherwise. power_full, when
    present, is the full-commutator power tr([H0, H]/i rho) alongside an
    interaction-only power column.
    """

    times: np.ndarray
    ergotropy: np.ndarray
    power: np.ndarray
    correlation: np.ndarray
    coherence: np.ndarray
    power_full: np.ndarray | None = None

    def __post_init__(self):
        lengths = {len(self.times), len(self.ergotropy), len(self.power),
                   len(self.correlation), len(self.coherence)}
        if self.power_full is not None:
            lengths.add(len(self.power_full))
        if len(lengths) != 1:
            raise DimensionMismatchError("trace columns have differing lengths")

    def summary(self) -> "AveragedSummary":
        """Window-averaged figures of merit over the stored grid."""
        p = self.power if self.power_full is None else self.power_full
        return AveragedSummary(
            e_fin=float(self.ergotropy[-1]),
            p_avg=time_average(self.times, p),
            q_avg=time_average(self.times, self.correlation),
            c_avg=time_average(self.times, self.coherence),
        )


@dataclass(frozen=True)
class AveragedSummary:
    """Ergotropy at the end of the window plus window averages (same units
    as ChargeTrace)."""

    e_fin: float
    p_avg: float
    q_avg: float
    c_avg: float

"""State propagation: two-cell closed forms, spectral evolution, dephasing RK4.

The driven two-cell chain diagonalizes in closed form. With
alpha = J*(delta - 1) and beta = sqrt(J**2 (delta-1)**2 + 4 Omega**2) the
four levels are

    e1 = J*delta,  e2 = -J*(delta + 2),  e3 = J - beta,  e4 = J + beta,

e1/e2 living on the antisymmetric combinations of |dd>,|uu> and |du>,|ud>,
and e3/e4 on symmetric combinations mixed by gamma1, gamma2. Everything
else is propagated numerically through the Hermitian eigensolver or, with
dephasing, a fixed-step RK4 on the density matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, StepTooLargeError
from .kernels import lindblad_rk4
from .linalg import as_complex_matrix, hermitian_eigensystem
from .model import BatteryParams, BatteryState

# (spectral norm of H + 2 N gamma) * dt must stay below this for the RK4 step.
RK4_STABILITY_BOUND = 0.05


@dataclass(frozen=True)
class TwoCellSpectrum:
    """Closed-form eigendata of the driven two-cell Hamiltonian."""

    e1: float
    e2: float
    e3: float
    e4: float
    alpha: float
    beta: float
    gamma1: float
    gamma2: float

    def energies(self) -> np.ndarray:
        return np.array([self.e1, self.e2, self.e3, self.e4])

    def eigenstates(self) -> np.ndarray:
        """Eigenvector columns in the order e1..e4, basis (dd, du, ud, uu)."""
        s = 1.0 / np.sqrt(2.0)
        g1, g2 = self.gamma1, self.gamma2
        return np.array(
            [
                [s, 0.0, g1, g2],
                [0.0, s, -g2, g1],
                [0.0, -s, -g2, g1],
                [-s, 0.0, g1, g2],
            ],
            dtype=np.complex128,
        )


def two_cell_spectrum(params: BatteryParams) -> TwoCellSpectrum:
    """Closed-form spectrum of H_ch + H_int for two cells."""
    if params.n_cells != 2:
        raise DimensionMismatchError("closed-form spectrum requires n_cells = 2")
    j, d, om = params.coupling_j, params.delta, params.omega_rabi
    alpha = j * (d - 1.0)
    beta = np.sqrt(j * j * (d - 1.0) ** 2 + 4.0 * om * om)
    denom = np.sqrt(2.0 * (alpha + beta) ** 2 + 8.0 * om * om)
    gamma1 = 2.0 * om / denom
    gamma2 = (alpha + beta) / denom
    return TwoCellSpectrum(
        e1=j * d,
        e2=-j * (d + 2.0),
        e3=j - beta,
        e4=j + beta,
        alpha=alpha,
        beta=beta,
        gamma1=gamma1,
        gamma2=gamma2,
    )


@dataclass(frozen=True)
class StateCoefficients:
    """Two-cell amplitudes: mu |uu> + nu |ud> + eta |du> + delta |dd>."""

    mu: complex
    nu: complex
    eta: complex
    delta: complex

    def __post_init__(self):
        norm2 = abs(self.mu) ** 2 + abs(self.nu) ** 2 + abs(self.eta) ** 2 + abs(self.delta) ** 2
        if abs(norm2 - 1.0) > 1e-10:
            raise ValueError(f"coefficients not normalized: |psi|^2 = {norm2!r}")

    @classmethod
    def from_vector(cls, v) -> "StateCoefficients":
        v = np.asarray(v, dtype=np.complex128)
        if v.shape != (4,):
            raise DimensionMismatchError("two-cell amplitude vector must have length 4")
        return cls(mu=complex(v[3]), nu=complex(v[2]), eta=complex(v[1]), delta=complex(v[0]))

    def to_vector(self) -> np.ndarray:
        return np.array([self.delta, self.eta, self.nu, self.mu], dtype=np.complex128)


@dataclass(frozen=True)
class ProductStateAngles:
    """Bloch angles of a two-cell product state; theta in [0, pi], phi in [0, 2 pi)."""

    theta1: float
    theta2: float
    phi1: float = 0.0
    phi2: float = 0.0

    def __post_init__(self):
        for name in ("theta1", "theta2"):
            th = getattr(self, name)
            if not 0.0 <= th <= np.pi:
                raise ValueError(f"{name} = {th!r} outside [0, pi]")
        for name in ("phi1", "phi2"):
            ph = getattr(self, name)
            if not 0.0 <= ph < 2.0 * np.pi:
                raise ValueError(f"{name} = {ph!r} outside [0, 2 pi)")

    def coefficients(self) -> StateCoefficients:
        t1, t2, p1, p2 = self.theta1, self.theta2, self.phi1, self.phi2
        return StateCoefficients(
            mu=np.sin(t1) * np.sin(t2) * np.exp(1j * (p1 + p2)),
            nu=np.sin(t1) * np.cos(t2) * np.exp(1j * p1),
            eta=np.cos(t1) * np.sin(t2) * np.exp(1j * p2),
            delta=np.cos(t1) * np.cos(t2),
        )


@dataclass(frozen=True)
class GammaFactors:
    """Initial-state structure factors of the product-state energy formula."""

    g1: float
    g2: float
    g3: float
    g4: float


def gamma_factors(angles: ProductStateAngles, spec: TwoCellSpectrum) -> GammaFactors:
    t1, t2, p1, p2 = angles.theta1, angles.theta2, angles.phi1, angles.phi2
    g1 = 2.0 * (np.cos(t1) ** 2 * np.cos(t2) ** 2 - np.sin(t1) ** 2 * np.sin(t2) ** 2)
    g2 = np.sin(2 * t1) * np.sin(2 * t2) * np.sin(p1 + p2)
    g3 = np.sin(2 * t1) * np.sin(p1) + np.sin(2 * t2) * np.sin(p2)
    g4 = spec.gamma1 * spec.gamma2 * (
        np.sin(2 * t1) * np.cos(2 * t2) * np.cos(p1)
        + np.sin(2 * t2) * np.cos(2 * t1) * np.cos(p2)
    )
    return GammaFactors(g1=float(g1), g2=float(g2), g3=float(g3), g4=float(g4))


def closed_form_amplitudes(init: StateCoefficients, times, spec: TwoCellSpectrum) -> np.ndarray:
    """Evolved amplitude vectors, shape (len(times), 4), basis order (dd, du, ud, uu)."""
    t = np.atleast_1d(np.asarray(times, dtype=np.float64))
    mu, nu, eta, de = init.mu, init.nu, init.eta, init.delta
    g1, g2 = spec.gamma1, spec.gamma2
    p1 = np.exp(-1j * spec.e1 * t)
    p2 = np.exp(-1j * spec.e2 * t)
    p3 = np.exp(-1j * spec.e3 * t)
    p4 = np.exp(-1j * spec.e4 * t)
    cross = g1 * g2 * (p4 - p3)
    mu_t = -0.5 * (de - mu) * p1 + (de + mu) * (g1 * g1 * p3 + g2 * g2 * p4) + (nu + eta) * cross
    nu_t = -0.5 * (eta - nu) * p2 + (eta + nu) * (g2 * g2 * p3 + g1 * g1 * p4) + (de + mu) * cross
    de_t = (de - mu) * p1 + mu_t
    eta_t = (eta - nu) * p2 + nu_t
    return np.stack([de_t, eta_t, nu_t, mu_t], axis=-1)


def evolve_closed_form(init: StateCoefficients, t: float, params: BatteryParams) -> StateCoefficients:
    """Closed-form time evolution of arbitrary two-cell coefficients."""
    spec = two_cell_spectrum(params)
    vec = closed_form_amplitudes(init, float(t), spec)[0]
    return StateCoefficients.from_vector(vec)


def _energy_terms(spec: TwoCellSpectrum, times):
    t = np.asarray(times, dtype=np.float64)
    w31 = spec.e3 - spec.e1
    w41 = spec.e4 - spec.e1
    return t, w31, w41


def energy_closed_form(angles: ProductStateAngles, t, params: BatteryParams):
    """<H0> at time t for a product-state start, via the structure factors.

    The g3 cross term enters weighted by gamma1*gamma2, which is what the
    spectral decomposition gives (g4 carries that weight in its definition
    already). Accepts scalar or array t.
    """
    spec = two_cell_spectrum(params)
    g = gamma_factors(angles, spec)
    tt, w31, w41 = _energy_terms(spec, t)
    g1sq, g2sq = spec.gamma1**2, spec.gamma2**2
    u = -2.0 * params.omega0 * (
        g.g1 * (g1sq * np.cos(w31 * tt) + g2sq * np.cos(w41 * tt))
        + g.g2 * (g1sq * np.sin(w31 * tt) + g2sq * np.sin(w41 * tt))
        + spec.gamma1 * spec.gamma2 * g.g3 * (np.sin(w41 * tt) - np.sin(w31 * tt))
        + g.g4 * (np.cos(w41 * tt) - np.cos(w31 * tt))
    )
    return float(u) if np.isscalar(t) else u


def ergotropy_closed_form_empty(t, params: BatteryParams):
    """Ergotropy of the empty-start two-cell battery at time t (scalar or array)."""
    spec = two_cell_spectrum(params)
    tt, w31, w41 = _energy_terms(spec, t)
    e = -4.0 * params.omega0 * (
        spec.gamma1**2 * np.cos(w31 * tt) + spec.gamma2**2 * np.cos(w41 * tt) - 0.5
    )
    return float(e) if np.isscalar(t) else e


def power_closed_form_empty(t, params: BatteryParams):
    """Instantaneous charging power dE/dt of the empty-start two-cell battery."""
    spec = two_cell_spectrum(params)
    tt, w31, w41 = _energy_terms(spec, t)
    p = 4.0 * params.omega0 * (
        spec.gamma1**2 * w31 * np.sin(w31 * tt) + spec.gamma2**2 * w41 * np.sin(w41 * tt)
    )
    return float(p) if np.isscalar(t) else p


def spectral_propagate(h, psi0: BatteryState, t: float) -> BatteryState:
    """Evolve a pure state under a time-independent Hermitian H for time t."""
    hm = as_complex_matrix(h)
    v0 = psi0.vector
    if hm.shape[0] != v0.size:
        raise DimensionMismatchError(
            f"Hamiltonian dim {hm.shape[0]} does not match state dim {v0.size}")
    w, vecs = hermitian_eigensystem(hm)
    c = vecs.conj().T @ v0
    vt = vecs @ (np.exp(-1j * w * float(t)) * c)
    return BatteryState.pure(vt, psi0.n_cells)


def spectral_trajectory(h, psi0: BatteryState, times) -> np.ndarray:
    """Evolved amplitude vectors at each time, shape (len(times), dim)."""
    hm = as_complex_matrix(h)
    v0 = psi0.vector
    if hm.shape[0] != v0.size:
        raise DimensionMismatchError(
            f"Hamiltonian dim {hm.shape[0]} does not match state dim {v0.size}")
    t = np.asarray(times, dtype=np.float64)
    w, vecs = hermitian_eigensystem(hm)
    c = vecs.conj().T @ v0
    phases = np.exp(-1j * np.outer(t, w))
    return (phases * c) @ vecs.T


def dephasing_rates(n_cells: int, gamma: float) -> np.ndarray:
    """Elementwise decay matrix of local Z dephasing at rate gamma.

    Entry (m, n) is -2 * gamma * hamming(m, n): coherences between basis
    states differing in d bits decay at 2 * gamma * d, populations are
    untouched.
    """
    dim = 2**n_cells
    idx = np.arange(dim)
    ham = np.zeros((dim, dim))
    for k in range(n_cells):
        bit = (idx >> k) & 1
        ham += bit[:, None] != bit[None, :]
    return -2.0 * gamma * ham


@dataclass(frozen=True)
class Trajectory:
    """Stored density-matrix trajectory on a uniform time grid."""

    times: np.ndarray
    states: tuple[BatteryState, ...]

    def densities(self) -> np.ndarray:
        return np.stack([s.density() for s in self.states])


def lindblad_integrate(h, rho0: BatteryState, params: BatteryParams,
                       t_end: float, n_steps: int) -> Trajectory:
    """Fixed-step RK4 integration of the dephasing master equation.

    Pure initial states are promoted to density matrices. Every stored state
    is re-Hermitized; the step must satisfy
    (||H|| + 2 n gamma) * dt <= 0.05 or StepTooLargeError is raised.
    """
    hm = as_complex_matrix(h)
    rho = rho0.density()
    if hm.shape[0] != rho.shape[0]:
        raise DimensionMismatchError(
            f"Hamiltonian dim {hm.shape[0]} does not match state dim {rho.shape[0]}")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    gamma = params.gamma_deph
    n = rho0.n_cells
    dt = float(t_end) / n_steps
    h_norm = float(np.max(np.abs(hermitian_eigensystem(hm).values)))
    stiffness = (h_norm + 2.0 * n * gamma) * dt
    if stiffness > RK4_STABILITY_BOUND:
        raise StepTooLargeError(
            f"(||H|| + 2 n gamma) * dt = {stiffness:.4f} exceeds {RK4_STABILITY_BOUND}; "
            f"use at least {int(np.ceil(stiffness / RK4_STABILITY_BOUND * n_steps))} steps")
    decay = dephasing_rates(n, gamma)
    traj = lindblad_rk4(hm, rho, decay, dt, n_steps)
    times = dt * np.arange(n_steps + 1)
    states = tuple(BatteryState.mixed(traj[k], n) for k in range(n_steps + 1))
    return Trajectory(times=times, states=states)

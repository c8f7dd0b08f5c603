"""Hamiltonians, parameters and canonical states of the driven spin-chain battery.

Basis convention (fixed across the package): cell 1 is the most significant
bit of the basis index; bit value 0 is the single-spin ground state |down>
(``PAULI_Z`` eigenvalue -1) and bit value 1 the excited state |up>. The empty
battery |down...down> therefore sits at basis index 0 and the full battery at
index 2**n - 1. hbar = 1 throughout; frequencies and energies share units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidDensityMatrixError,
    NotPureError,
    UnsupportedCellCountError,
)
from .linalg import as_complex_matrix, hermiticity_defect


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


IDENTITY_2 = _readonly(np.eye(2, dtype=np.complex128))
PAULI_X = _readonly(np.array([[0, 1], [1, 0]], dtype=np.complex128))
PAULI_Y = _readonly(np.array([[0, 1j], [-1j, 0]], dtype=np.complex128))
PAULI_Z = _readonly(np.array([[-1, 0], [0, 1]], dtype=np.complex128))

NORM_TOL = 1e-10
SUPPORTED_CELLS = (2, 3)


@dataclass(frozen=True)
class BatteryParams:
    """Physical configuration of a charging run.

    omega0 is the cell Larmor frequency (sets the stored-energy scale),
    omega_rabi the charging-field amplitude, coupling_j the exchange
    strength, delta the dimensionless ZZ anisotropy and gamma_deph the
    dephasing rate. t_steps is the number of stored samples on [0, t_min].
    """

    n_cells: int = 2
    omega0: float = 1.0
    omega_rabi: float = 1.0
    coupling_j: float = 1.0
    delta: float = 1.0
    gamma_deph: float = 0.0
    t_steps: int = 1001

    def __post_init__(self):
        if self.n_cells not in SUPPORTED_CELLS:
            raise UnsupportedCellCountError(f"n_cells must be 2 or 3, got {self.n_cells}")
        if not self.omega0 > 0:
            raise ValueError("omega0 must be positive")
        if not self.omega_rabi > 0:
            raise ValueError("omega_rabi must be positive")
        if self.coupling_j < 0:
            raise ValueError("coupling_j must be non-negative")
        if self.gamma_deph < 0:
            raise ValueError("gamma_deph must be non-negative")
        if self.t_steps < 2:
            raise ValueError("t_steps must be at least 2")

    @property
    def dim(self) -> int:
        return 2**self.n_cells

    @property
    def t_min(self) -> float:
        """Parallel full-charge time pi / (2 Omega), the observation window."""
        return np.pi / (2.0 * self.omega_rabi)

    @property
    def e_max(self) -> float:
        """Maximum storable energy 2 n omega0 (full minus empty)."""
        return 2.0 * self.n_cells * self.omega0

    @property
    def p_max_parallel(self) -> float:
        """Peak instantaneous power of the parallel protocol, e_max * Omega."""
        return self.e_max * self.omega_rabi


class BatteryState:
    """Pure amplitude vector or density matrix over the 2**n product basis."""

    __slots__ = ("n_cells", "_vector", "_density")

    def __init__(self, n_cells, vector, density):
        self.n_cells = n_cells
        self._vector = vector
        self._density = density

    @classmethod
    def pure(cls, amplitudes, n_cells: int | None = None) -> "BatteryState":
        v = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if v.ndim != 1:
            raise ValueError("pure state amplitudes must be a 1-D vector")
        n = int(np.log2(v.size)) if n_cells is None else n_cells
        if 2**n != v.size:
            raise ValueError(f"amplitude length {v.size} is not 2**{n}")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized: |psi| = {norm!r}")
        return cls(n, _readonly(v), None)

    @classmethod
    def mixed(cls, rho, n_cells: int | None = None) -> "BatteryState":
        m = as_complex_matrix(rho)
        n = int(np.log2(m.shape[0])) if n_cells is None else n_cells
        if 2**n != m.shape[0]:
            raise InvalidDensityMatrixError(f"dimension {m.shape[0]} is not 2**{n}")
        defect = hermiticity_defect(m)
        if defect > NORM_TOL:
            raise InvalidDensityMatrixError(f"density matrix not Hermitian (defect {defect:.3e})")
        tr = np.trace(m).real
        if abs(tr - 1.0) > NORM_TOL:
            raise InvalidDensityMatrixError(f"trace {tr!r} differs from 1")
        return cls(n, None, _readonly(m))

    @property
    def is_pure(self) -> bool:
        return self._vector is not None

    @property
    def dim(self) -> int:
        return 2**self.n_cells

    @property
    def vector(self) -> np.ndarray:
        if self._vector is None:
            raise NotPureError("state is a density matrix, not an amplitude vector")
        return self._vector

    def density(self) -> np.ndarray:
        """Density matrix; pure states are promoted to |psi><psi|."""
        if self._density is not None:
            return self._density
        return np.outer(self._vector, self._vector.conj())


def single_site(op, site: int, n_cells: int) -> np.ndarray:
    """Embed a single-qubit operator on ``site`` (0-based, site 0 = MSB)."""
    out = np.array([[1.0 + 0.0j]])
    for k in range(n_cells):
        out = np.kron(out, op if k == site else IDENTITY_2)
    return out


def build_h0(params: BatteryParams) -> np.ndarray:
    """Reference Hamiltonian omega0 * sum_n Z_n, diagonal in the product basis."""
    n = params.n_cells
    return params.omega0 * sum(single_site(PAULI_Z, k, n) for k in range(n))


def build_h_charging(params: BatteryParams) -> np.ndarray:
    """Local driving field Omega * sum_n X_n."""
    n = params.n_cells
    return params.omega_rabi * sum(single_site(PAULI_X, k, n) for k in range(n))


def build_h_interaction(params: BatteryParams) -> np.ndarray:
    """Open-chain XXZ exchange J * sum_bonds (XX + YY + delta ZZ)."""
    n = params.n_cells
    if n not in SUPPORTED_CELLS:
        raise UnsupportedCellCountError(f"interaction defined for 2 or 3 cells, got {n}")
    h = np.zeros((2**n, 2**n), dtype=np.complex128)
    for b in range(n - 1):
        h += params.coupling_j * (
            single_site(PAULI_X, b, n) @ single_site(PAULI_X, b + 1, n)
            + single_site(PAULI_Y, b, n) @ single_site(PAULI_Y, b + 1, n)
            + params.delta * single_site(PAULI_Z, b, n) @ single_site(PAULI_Z, b + 1, n)
        )
    return h


def build_h_driving(params: BatteryParams) -> np.ndarray:
    """Charging Hamiltonian H_ch + H_int that generates the dynamics."""
    return build_h_charging(params) + build_h_interaction(params)


def empty_state(n_cells: int) -> BatteryState:
    """|down...down>, the discharged battery (basis index 0)."""
    if n_cells not in SUPPORTED_CELLS:
        raise UnsupportedCellCountError(f"n_cells must be 2 or 3, got {n_cells}")
    v = np.zeros(2**n_cells, dtype=np.complex128)
    v[0] = 1.0
    return BatteryState.pure(v, n_cells)


def full_state(n_cells: int) -> BatteryState:
    """|up...up>, the fully charged battery (basis index 2**n - 1)."""
    if n_cells not in SUPPORTED_CELLS:
        raise UnsupportedCellCountError(f"n_cells must be 2 or 3, got {n_cells}")
    v = np.zeros(2**n_cells, dtype=np.complex128)
    v[-1] = 1.0
    return BatteryState.pure(v, n_cells)

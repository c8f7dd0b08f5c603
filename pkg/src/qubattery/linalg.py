"""Dense complex linear algebra for few-qubit operators and density matrices.

Everything here works on plain ``numpy.complex128`` square arrays. Matrices
stay small (4x4 and 8x8 dominate), so the Hermitian eigensolver is a cyclic
Jacobi sweep tuned for robustness and determinism rather than asymptotic
speed.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError
from .kernels import jacobi_eigh

HERMITIAN_TOL = 1e-10


class EigenDecomposition(NamedTuple):
    """Eigenvalues in ascending order and the matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a square C-contiguous complex128 array."""
    m = np.ascontiguousarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def dagger(a) -> np.ndarray:
    return np.conj(np.asarray(a)).T


def hermiticity_defect(a) -> float:
    """max |A[i,j] - conj(A[j,i])| over all entries."""
    m = np.asarray(a, dtype=np.complex128)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_defect(a) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product; the left factor is the most significant subsystem."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def commutator(a, b) -> np.ndarray:
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    return a @ b - b @ a


def hermitian_eigensystem(a, tol: float = HERMITIAN_TOL) -> EigenDecomposition:
    """Spectral decomposition of a Hermitian matrix.

    Raises
    ------
    NotHermitianError
        If the symmetry defect exceeds ``tol``.
    """
    m = as_complex_matrix(a)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitianError(
            f"matrix is not Hermitian: defect {defect:.3e} exceeds {tol:.1e}")
    values, vectors = jacobi_eigh(m)
    return EigenDecomposition(values, vectors)


def partial_trace(rho, keep: int, n_qubits: int) -> np.ndarray:
    """Reduced 2x2 density matrix of one qubit of an ``n_qubits`` register.

    Qubit 0 is the most significant bit of the basis index, matching the
    operator-embedding convention used by the model builders.
    """
    m = as_complex_matrix(rho)
    dim = 2**n_qubits
    if m.shape[0] != dim:
        raise DimensionMismatchError(
            f"matrix dim {m.shape[0]} does not match {n_qubits} qubits (expected {dim})")
    if not 0 <= keep < n_qubits:
        raise DimensionMismatchError(f"keep index {keep} outside [0, {n_qubits})")
    row = [chr(ord("a") + q) for q in range(n_qubits)]
    col = list(row)
    row[keep] = "y"
    col[keep] = "z"
    subscripts = "".join(row) + "".join(col) + "->yz"
    return np.einsum(subscripts, m.reshape((2,) * (2 * n_qubits)))

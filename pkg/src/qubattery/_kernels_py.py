"""Pure-numpy reference implementations of the hot kernels.

Same algorithms as the compiled module ``_kernels_cy``; used as the import
fallback and as the baseline in the kernel benchmark.
"""

import numpy as np

# Off-diagonal Frobenius norm below CONV_FACTOR * ||A||_F counts as diagonal.
CONV_FACTOR = 1e-14
MAX_SWEEPS = 60


def jacobi_eigh(a):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    a : (n, n) complex ndarray
        Hermitian matrix. Symmetrized internally; the caller is responsible
        for rejecting inputs that are not Hermitian to begin with.

    Returns
    -------
    values : (n,) float ndarray, ascending
    vectors : (n, n) complex ndarray, eigenvectors in columns
    """
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    A = 0.5 * (a + a.conj().T)
    V = np.eye(n, dtype=np.complex128)
    norm = np.linalg.norm(A)
    if n == 1 or norm == 0.0:
        return np.diag(A).real.copy(), V
    threshold = CONV_FACTOR * norm

    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r == 0.0:
                    continue
                phase = apq / r
                phc = phase.conjugate()
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c

                mask = np.ones(n, dtype=bool)
                mask[p] = mask[q] = False
                aip = A[mask, p].copy()
                aiq = A[mask, q].copy()
                A[mask, p] = c * aip - s * phc * aiq
                A[mask, q] = s * phase * aip + c * aiq
                A[p, mask] = np.conj(A[mask, p])
                A[q, mask] = np.conj(A[mask, q])
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r
                A[p, q] = 0.0
                A[q, p] = 0.0

                vip = V[:, p].copy()
                viq = V[:, q].copy()
                V[:, p] = c * vip - s * phc * viq
                V[:, q] = s * phase * vip + c * viq
    else:
        raise ArithmeticError("Jacobi eigensolver did not converge")

    values = np.diag(A).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], np.ascontiguousarray(V[:, order])


def lindblad_rk4(h, rho0, decay, dt, n_steps):
    """Fixed-step RK4 integration of d(rho)/dt = -i[H, rho] + decay * rho.

    ``decay`` is the elementwise dephasing-rate matrix (real, <= 0 off the
    diagonal, 0 on it). Every accepted step is re-Hermitized. Returns the
    full trajectory including the initial state, shape (n_steps+1, d, d).
    """
    h = np.asarray(h, dtype=np.complex128)
    rho = np.array(rho0, dtype=np.complex128)
    decay = np.asarray(decay, dtype=np.float64)
    d = rho.shape[0]
    out = np.empty((n_steps + 1, d, d), dtype=np.complex128)
    out[0] = rho

    def rhs(r):
        return -1j * (h @ r - r @ h) + decay * r

    for step in range(1, n_steps + 1):
        k1 = rhs(rho)
        k2 = rhs(rho + (0.5 * dt) * k1)
        k3 = rhs(rho + (0.5 * dt) * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        rho = 0.5 * (rho + rho.conj().T)
        out[step] = rho
    return out

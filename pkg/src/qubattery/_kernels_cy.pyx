# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: cyclic Jacobi eigensolver and dephasing RK4 stepper.

Mirrors qubattery._kernels_py; keep the two in sync.
"""

import numpy as np

from libc.math cimport fabs, hypot, sqrt

cdef double CONV_FACTOR = 1e-14
cdef int MAX_SWEEPS = 60


def jacobi_eigh(a):
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix."""
    a_arr = np.array(a, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a_arr.shape[0]
    A_arr = 0.5 * (a_arr + a_arr.conj().T)
    V_arr = np.eye(n, dtype=np.complex128)
    norm = float(np.linalg.norm(A_arr))
    if n == 1 or norm == 0.0:
        return np.diag(A_arr).real.copy(), V_arr

    cdef double complex[:, ::1] A = A_arr
    cdef double complex[:, ::1] V = V_arr
    cdef double threshold = CONV_FACTOR * norm
    cdef double off, r, app, aqq, tau, t, c, s
    cdef double complex apq, phase, phc, aip, aiq, vip, viq
    cdef Py_ssize_t p, q, i, sweep
    cdef bint converged = 0

    for sweep in range(MAX_SWEEPS):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += 2.0 * (A[p, q].real * A[p, q].real + A[p, q].imag * A[p, q].imag)
        off = sqrt(off)
        if off <= threshold:
            converged = 1
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = hypot(apq.real, apq.imag)
                if r == 0.0:
                    continue
                phase = apq / r
                phc = phase.conjugate()
                app = A[p, p].real
                aqq = A[q, q].real
                tau = (aqq - app) / (2.0 * r)
                t = (1.0 if tau >= 0.0 else -1.0) / (fabs(tau) + sqrt(1.0 + tau * tau))
                c = 1.0 / sqrt(1.0 + t * t)
                s = t * c

                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip = A[i, p]
                    aiq = A[i, q]
                    A[i, p] = c * aip - s * phc * aiq
                    A[i, q] = s * phase * aip + c * aiq
                    A[p, i] = A[i, p].conjugate()
                    A[q, i] = A[i, q].conjugate()
                A[p, p] = app - t * r
                A[q, q] = aqq + t * r
                A[p, q] = 0.0
                A[q, p] = 0.0

                for i in range(n):
                    vip = V[i, p]
                    viq = V[i, q]
                    V[i, p] = c * vip - s * phc * viq
                    V[i, q] = s * phase * vip + c * viq
    if not converged:
        raise ArithmeticError("Jacobi eigensolver did not converge")

    values = np.diag(A_arr).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], np.ascontiguousarray(V_arr[:, order])


cdef void _rhs(double complex[:, ::1] h, double complex[:, ::1] rho,
               double[:, ::1] decay, double complex[:, ::1] out,
               Py_ssize_t d) noexcept:
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    for i in range(d):
        for j in range(d):
            acc = 0
            for k in range(d):
                acc = acc + h[i, k] * rho[k, j] - rho[i, k] * h[k, j]
            out[i, j] = -1j * acc + decay[i, j] * rho[i, j]


def lindblad_rk4(h, rho0, decay, double dt, Py_ssize_t n_steps):
    """RK4 trajectory of d(rho)/dt = -i[H, rho] + decay * rho, Hermitized per step."""
    h_arr = np.array(h, dtype=np.complex128, order="C")
    rho_arr = np.array(rho0, dtype=np.complex128, order="C")
    decay_arr = np.array(decay, dtype=np.float64, order="C")
    cdef Py_ssize_t d = rho_arr.shape[0]
    out_arr = np.empty((n_steps + 1, d, d), dtype=np.complex128)
    out_arr[0] = rho_arr

    cdef double complex[:, ::1] hm = h_arr
    cdef double complex[:, ::1] rho = rho_arr
    cdef double[:, ::1] dec = decay_arr
    cdef double complex[:, :, ::1] out = out_arr

    k1_arr = np.empty((d, d), dtype=np.complex128)
    k2_arr = np.empty((d, d), dtype=np.complex128)
    k3_arr = np.empty((d, d), dtype=np.complex128)
    k4_arr = np.empty((d, d), dtype=np.complex128)
    tmp_arr = np.empty((d, d), dtype=np.complex128)
    cdef double complex[:, ::1] k1 = k1_arr
    cdef double complex[:, ::1] k2 = k2_arr
    cdef double complex[:, ::1] k3 = k3_arr
    cdef double complex[:, ::1] k4 = k4_arr
    cdef double complex[:, ::1] tmp = tmp_arr

    cdef Py_ssize_t step, i, j
    cdef double complex avg
    for step in range(1, n_steps + 1):
        _rhs(hm, rho, dec, k1, d)
        for i in range(d):
            for j in range(d):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k1[i, j]
        _rhs(hm, tmp, dec, k2, d)
        for i in range(d):
            for j in range(d):
                tmp[i, j] = rho[i, j] + 0.5 * dt * k2[i, j]
        _rhs(hm, tmp, dec, k3, d)
        for i in range(d):
            for j in range(d):
                tmp[i, j] = rho[i, j] + dt * k3[i, j]
        _rhs(hm, tmp, dec, k4, d)
        for i in range(d):
            for j in range(d):
                rho[i, j] = rho[i, j] + (dt / 6.0) * (
                    k1[i, j] + 2.0 * k2[i, j] + 2.0 * k3[i, j] + k4[i, j])
        for i in range(d):
            rho[i, i] = rho[i, i].real
            for j in range(i + 1, d):
                avg = 0.5 * (rho[i, j] + rho[j, i].conjugate())
                rho[i, j] = avg
                rho[j, i] = avg.conjugate()
        for i in range(d):
            for j in range(d):
                out[step, i, j] = rho[i, j]
    return out_arr

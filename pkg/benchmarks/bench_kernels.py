#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from qubattery import _kernels_py

try:
    from qubattery import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_hermitian_batch(rng, n, count):
    out = []
    for _ in range(count):
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        out.append(m + m.conj().T)
    return out


def time_call(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_jacobi(module, batch):
    def run():
        for m in batch:
            module.jacobi_eigh(m)
    return run


def bench_lindblad(module, h, rho0, decay, steps):
    def run():
        module.lindblad_rk4(h, rho0, decay, 1e-3, steps)
    return run


def hamming_decay(n_qubits, gamma):
    dim = 2**n_qubits
    idx = np.arange(dim)
    ham = np.zeros((dim, dim))
    for k in range(n_qubits):
        bit = (idx >> k) & 1
        ham += bit[:, None] != bit[None, :]
    return -2.0 * gamma * ham


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(12345)
    rows = []
    for n in (4, 8):
        batch = random_hermitian_batch(rng, n, 300)
        rows.append((f"jacobi_eigh {n}x{n} (300 matrices)",
                     bench_jacobi(_kernels_py, batch),
                     bench_jacobi(_kernels_cy, batch) if _kernels_cy else None))
    for nq in (2, 3):
        dim = 2**nq
        h = random_hermitian_batch(rng, dim, 1)[0]
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        rho0 = m @ m.conj().T
        rho0 /= np.trace(rho0).real
        decay = hamming_decay(nq, 0.3)
        rows.append((f"lindblad_rk4 {dim}x{dim} (2000 steps)",
                     bench_lindblad(_kernels_py, h, rho0, decay, 2000),
                     bench_lindblad(_kernels_cy, h, rho0, decay, 2000) if _kernels_cy else None))

    print(f"{'kernel':<36} {'python':>10} {'cython':>10} {'speedup':>9}")
    for label, py_fn, cy_fn in rows:
        t_py = time_call(py_fn, args.repeats)
        if cy_fn is None:
            print(f"{label:<36} {t_py * 1e3:>8.2f}ms {'n/a':>10} {'n/a':>9}")
            continue
        t_cy = time_call(cy_fn, args.repeats)
        print(f"{label:<36} {t_py * 1e3:>8.2f}ms {t_cy * 1e3:>8.2f}ms {t_py / t_cy:>8.1f}x")
    if _kernels_cy is None:
        print("\ncompiled extension not available; build it with "
              "`pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()

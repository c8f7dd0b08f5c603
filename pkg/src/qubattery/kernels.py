"""Kernel backend selection.

The compiled Cython kernels are preferred; the pure-numpy module is a
drop-in fallback. Set QUBATTERY_PURE_PYTHON=1 to force the fallback
(used by the benchmark and when the extension was not built).
"""

import os

if os.environ.get("QUBATTERY_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import jacobi_eigh, lindblad_rk4

    BACKEND = "python"
else:
    try:
        from ._kernels_cy import jacobi_eigh, lindblad_rk4

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import jacobi_eigh, lindblad_rk4

        BACKEND = "python"

__all__ = ["jacobi_eigh", "lindblad_rk4", "BACKEND"]

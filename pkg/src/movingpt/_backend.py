"""Select the kernel backend at import time."""
import os

BACKEND = "python"

if os.environ.get("MOVINGPT_PURE_PYTHON", "") not in ("", "0"):
    from ._kernels_py import jacobi_pair, x1_jacobi
else:
    try:
        from ._kernels import jacobi_pair, x1_jacobi

        BACKEND = "cython"
    except ImportError:
        from ._kernels_py import jacobi_pair, x1_jacobi

__all__ = ["BACKEND", "jacobi_pair", "x1_jacobi"]

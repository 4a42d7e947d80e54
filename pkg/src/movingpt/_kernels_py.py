"""Pure-numpy versions of the recurrence kernels.

Used when the compiled :mod:`movingpt._kernels` extension is unavailable or
``MOVINGPT_PURE_PYTHON`` is set. Both backends take a 1-D float array ``z``
and return new 1-D arrays.
"""
import numpy as np


def jacobi_pair(n, a, b, z):
    """Return ``(P_n, P_{n-1})`` for Jacobi parameters ``(a, b)``; ``P_{-1} = 0``."""
    z = np.ascontiguousarray(z, dtype=np.float64).ravel()
    p0 = np.ones_like(z)
    if n == 0:
        return p0, np.zeros_like(z)
    p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (z - 1.0)
    for k in range(2, n + 1):
        c = 2.0 * k + a + b
        k2 = 2.0 * k * (k + a + b) * (c - 2.0)
        p2 = ((c - 1.0) * (c * (c - 2.0) * z + a * a - b * b) * p1
              - 2.0 * (k + a - 1.0) * (k + b - 1.0) * c * p0) / k2
        p0, p1 = p1, p2
    return p1, p0


def x1_jacobi(n, a, b, z):
    """X1 exceptional Jacobi polynomial of degree ``n + 1``."""
    z = np.ascontiguousarray(z, dtype=np.float64).ravel()
    pn, pnm1 = jacobi_pair(n, a, b, z)
    r = (b + a) / (b - a)
    return 0.5 * (r - z) * pn + (r * pn - pnm1) / (b + a + 2.0 * n)

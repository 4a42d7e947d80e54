"""Classical and X1 exceptional Jacobi polynomials.

Evaluation goes through the three-term recurrence (compiled kernel when
available). Every function accepts a scalar or an array ``z`` and returns the
same shape; scalars come back as Python floats.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import DegenerateParametersError, DomainError

DEGENERACY_TOL = 1e-12

# Lanczos approximation, g = 7, nine terms
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class JacobiIndex:
    """Jacobi parameters; both must exceed -1 for an integrable weight."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha > -1.0 and self.beta > -1.0):
            raise DomainError(f"Jacobi indices must exceed -1, got ({self.alpha}, {self.beta})")


def _as_index(idx):
    if isinstance(idx, JacobiIndex):
        return idx
    return JacobiIndex(*idx)


def _apply(kernel_out, z):
    if np.ndim(z) == 0:
        return float(kernel_out[0])
    return kernel_out.reshape(np.shape(z))


def jacobi_eval(n, idx, z):
    """P_n^(alpha, beta)(z). Arguments outside [-1, 1] are allowed."""
    if n < 0:
        raise DomainError("degree must be non-negative")
    idx = _as_index(idx)
    pn, _ = _backend.jacobi_pair(int(n), idx.alpha, idx.beta, np.asarray(z, dtype=float))
    return _apply(pn, z)


def _jacobi_raw(n, a, b, z):
    # no index validation: derivative shifts and X1 pieces may leave the weight domain
    if n < 0:
        return np.zeros(np.shape(z)) if np.ndim(z) else 0.0
    pn, _ = _backend.jacobi_pair(int(n), float(a), float(b), np.asarray(z, dtype=float))
    return _apply(pn, z)


def jacobi_deriv(n, idx, z, order=1):
    """``order``-th derivative of P_n^(alpha, beta) via index shifting.

    d^k/dz^k P_n^(a,b) = prod_{j=1..k} (n+a+b+j)/2 * P_{n-k}^(a+k, b+k).
    """
    idx = _as_index(idx)
    if order < 0:
        raise DomainError("derivative order must be non-negative")
    if order > n:
        return np.zeros(np.shape(z)) if np.ndim(z) else 0.0
    scale = 1.0
    for j in range(1, order + 1):
        scale *= 0.5 * (n + idx.alpha + idx.beta + j)
    return scale * _jacobi_raw(n - order, idx.alpha + order, idx.beta + order, z)


def log_gamma(x):
    """ln Gamma(x) for x > 0 (Lanczos, about 15 significant digits)."""
    x = float(x)
    if not x > 0.0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (x + i)
    t = x + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (x + 0.5) * math.log(t) - t + math.log(acc)


def norm_const(n, idx):
    """Normalization constant N_n^(alpha, beta) of P_n^(alpha, beta), in log space."""
    idx = _as_index(idx)
    a, b = idx.alpha, idx.beta
    args = (n + a + b + 1.0, n + a + 1.0, n + b + 1.0, 2.0 * n + a + b + 1.0)
    if min(args) <= 0.0:
        raise DomainError(f"normalization undefined for n={n}, ({a}, {b})")
    log_sq = (
        log_gamma(n + 1.0)
        + math.log(2.0 * n + a + b + 1.0)
        + log_gamma(n + a + b + 1.0)
        - (a + b + 1.0) * math.log(2.0)
        - log_gamma(n + a + 1.0)
        - log_gamma(n + b + 1.0)
    )
    return math.exp(0.5 * log_sq)


def _check_x1(n, idx):
    if abs(idx.beta - idx.alpha) < DEGENERACY_TOL:
        raise DegenerateParametersError(f"beta - alpha = {idx.beta - idx.alpha} is degenerate")
    if abs(idx.beta + idx.alpha + 2 * n) < DEGENERACY_TOL:
        raise DegenerateParametersError("beta + alpha + 2n vanishes")


def x1_jacobi_eval(n, idx, z):
    """X1 Jacobi exceptional polynomial P-hat_{n+1}^(alpha, beta)(z).

    Built from P_n and P_{n-1} of the same indices, with P_{-1} = 0.
    """
    idx = _as_index(idx)
    if n < 0:
        raise DomainError("degree must be non-negative")
    _check_x1(n, idx)
    out = _backend.x1_jacobi(int(n), idx.alpha, idx.beta, np.asarray(z, dtype=float))
    return _apply(out, z)


def x1_jacobi_deriv(n, idx, z, order=1):
    """First or second derivative of :func:`x1_jacobi_eval` in z."""
    idx = _as_index(idx)
    _check_x1(n, idx)
    if order not in (1, 2):
        raise DomainError("only first and second derivatives are provided")
    a, b = idx.alpha, idx.beta
    r = (b + a) / (b - a)
    inv = 1.0 / (b + a + 2.0 * n)
    z_arr = np.asarray(z, dtype=float)

    def d(m, k):
        if m < 0 or k > m:
            return np.zeros_like(z_arr)
        scale = 1.0
        for j in range(1, k + 1):
            scale *= 0.5 * (m + a + b + j)
        return scale * np.asarray(_jacobi_raw(m - k, a + k, b + k, z_arr))

    # (r - z) P / 2 contributes -k/2 * P^(k-1) from the linear factor
    out = 0.5 * (r - z_arr) * d(n, order) - 0.5 * order * d(n, order - 1)
    out = out + inv * (r * d(n, order) - d(n - 1, order))
    return float(out) if np.ndim(z) == 0 else out

"""Gauss-Legendre integration with node doubling, and the moments I1, I2, I3.

Moment integrands can have integrable endpoint singularities (dQ/dq of the
minus sector blows up like (pi/2 - q)^(alpha - 3/2) when alpha < 3/2), and
near the walls ``q`` itself cannot resolve distances below ~1e-16. Moments
therefore run through :func:`integrate_box`, which maps the interval with a
double-exponential substitution and hands the integrand exact wall
distances; Gauss-Legendre then acts on a smooth, rapidly decaying function.
"""
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import QuadratureError
from .stationary import HALF_PI, StationaryState

# half-width of the v-interval of the double-exponential map; at v = 5 the
# wall distance is ~1e-101, far below any integrable tail that matters
DE_HALF_WIDTH = 5.0


@dataclass(frozen=True)
class QuadratureSpec:
    base_order: int = 64
    rel_tol: float = 1e-11
    max_doublings: int = 6
    # absolute floor for integrals whose exact value is zero; 0 = purely relative
    abs_tol: float = 0.0

    def __post_init__(self):
        if int(self.base_order) != self.base_order or self.base_order < 16:
            raise ValueError("base_order must be an integer >= 16")
        if not self.rel_tol >= 1e-14:
            raise ValueError("rel_tol must be >= 1e-14")
        if int(self.max_doublings) != self.max_doublings or self.max_doublings < 1:
            raise ValueError("max_doublings must be a positive integer")
        if not self.abs_tol >= 0.0:
            raise ValueError("abs_tol must be non-negative")


DEFAULT_SPEC = QuadratureSpec()


@lru_cache(maxsize=32)
def gauss_legendre(order):
    """Nodes and weights on [-1, 1], cached and read-only."""
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _fixed(f, a, b, order):
    x, w = gauss_legendre(order)
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    return half * float(np.dot(w, np.asarray(f(nodes), dtype=float)))


def integrate(f, a, b, spec=DEFAULT_SPEC):
    """Integrate vectorized ``f`` over (a, b); nodes never touch the endpoints.

    Doubles the node count until two successive estimates agree to
    ``spec.rel_tol`` (relative, or ``spec.abs_tol`` absolute if larger),
    raising :class:`QuadratureError` otherwise.
    """
    if not a < b:
        raise ValueError("need a < b")
    order = spec.base_order
    estimates = [_fixed(f, a, b, order)]
    for _ in range(spec.max_doublings):
        order *= 2
        estimates.append(_fixed(f, a, b, order))
        prev, cur = estimates[-2:]
        if abs(cur - prev) <= max(spec.rel_tol * abs(cur), spec.abs_tol):
            return cur
    raise QuadratureError(
        f"no convergence after {spec.max_doublings} doublings: {prev!r} vs {cur!r}",
        estimates=tuple(estimates),
    )


def box_nodes(v):
    """Map v in R to q in (-pi/2, pi/2): q, s_left, s_right, dq/dv."""
    v = np.asarray(v, dtype=float)
    y = HALF_PI * np.sinh(v)
    q = HALF_PI * np.tanh(y)
    # pi / (1 + e^{2y}) without overflow for large |y|
    s_right = math.pi * np.exp(-np.logaddexp(0.0, 2.0 * y))
    s_left = math.pi * np.exp(-np.logaddexp(0.0, -2.0 * y))
    jac = HALF_PI * HALF_PI * np.cosh(v) / np.cosh(y) ** 2
    return q, s_left, s_right, jac


def integrate_box(g, spec=DEFAULT_SPEC):
    """Integrate ``g(q, s_left, s_right)`` over (-pi/2, pi/2)."""

    def mapped(v):
        q, sl, sr, jac = box_nodes(v)
        vals = np.asarray(g(q, sl, sr), dtype=float)
        # nodes at the far tails may give inf * 0; their true contribution is nil
        return np.where(jac > 0.0, np.nan_to_num(vals * jac, nan=0.0, posinf=0.0, neginf=0.0), 0.0)

    return integrate(mapped, -DE_HALF_WIDTH, DE_HALF_WIDTH, spec)


@lru_cache(maxsize=256)
def _moments(state, spec):
    def density(q, sl, sr):
        return state.evaluate(q, sl, sr) ** 2

    def kinetic(q, sl, sr):
        return state.evaluate(q, sl, sr, order=1) ** 2

    norm = integrate_box(density, spec)
    i1 = integrate_box(lambda q, sl, sr: density(q, sl, sr) * q, spec)
    i2 = integrate_box(lambda q, sl, sr: density(q, sl, sr) * q * q, spec)
    i3 = integrate_box(kinetic, spec)
    return norm, i1, i2, i3


def moment(state, k, spec=DEFAULT_SPEC):
    """I_k = integral of Q^2 q^k dq for k in {0, 1, 2}."""
    if k not in (0, 1, 2):
        raise ValueError("k must be 0, 1 or 2")
    return _moments(state, spec)[k]


def moment_kinetic(state, spec=DEFAULT_SPEC):
    """I3 = integral of (dQ/dq)^2 dq."""
    return _moments(state, spec)[3]


def moments(state: StationaryState, spec=DEFAULT_SPEC):
    """(I1, I2, I3) for ``state``, cached per (state, spec)."""
    _, i1, i2, i3 = _moments(state, spec)
    return i1, i2, i3

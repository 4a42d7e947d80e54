"""Moving-wall machinery: boundary laws, the box-to-interval map, V(x, t), psi(x, t).

Units hbar = 2m = 1, box [0, L(t)]. With q = pi x / L - pi/2 and

    V(x, t) = (pi/L)^2 V~(q) + L Lddot / 16 - (Lddot / (4 L)) x^2,

the separated solution is psi_n = sqrt(pi/L) Q_n(q) exp(i F_n) with

    F_n = Ldot x^2 / (4L) - L Ldot / 16 + (1/16) int_0^t Ldot^2 ds - E_n tau(t),
    tau(t) = int_0^t (pi / L)^2 ds.

The additive constant inside V~ is scaled by (pi/L)^2 together with the rest
of V~; only that placement satisfies the time-dependent equation.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParametersError, OutOfBoxError, SingularityError
from .quadrature import DEFAULT_SPEC, integrate
from .stationary import HALF_PI, Sector, StationaryState, energy, potential_tilde


class BoundaryProfile:
    """Wall law L(t) with analytic first and second derivatives."""

    name = "profile"

    def evaluate(self, t):
        """Return ``(L, Ldot, Lddot)`` at ``t``."""
        raise NotImplementedError

    def length(self, t):
        return self.evaluate(t)[0]

    def tau(self, t, spec=DEFAULT_SPEC):
        """int_0^t (pi / L(s))^2 ds."""
        return _accumulate(lambda s: (math.pi / self.length(s)) ** 2, t, spec)

    def ldot_sq_integral(self, t, spec=DEFAULT_SPEC):
        """int_0^t Ldot(s)^2 ds."""
        return _accumulate(lambda s: self.evaluate(s)[1] ** 2, t, spec)

    def describe(self):
        return {"profile": self.name}


def _accumulate(f, t, spec):
    t = float(t)
    if t == 0.0:
        return 0.0
    if t < 0.0:
        return -integrate(f, t, 0.0, spec)
    return integrate(f, 0.0, t, spec)


@dataclass(frozen=True)
class Sinusoidal(BoundaryProfile):
    """L(t) = pi (2 + sin t)."""

    name = "sinusoidal"

    def evaluate(self, t):
        return math.pi * (2.0 + np.sin(t)), math.pi * np.cos(t), -math.pi * np.sin(t)

    def ldot_sq_integral(self, t, spec=DEFAULT_SPEC):
        return math.pi**2 * (0.5 * t + 0.25 * np.sin(2.0 * t))


@dataclass(frozen=True)
class InverseSqrtCosine(BoundaryProfile):
    """L(t) = A1 pi / sqrt(1 + B1 cos(omega t)), |B1| < 1."""

    A1: float = 1.0
    B1: float = 0.5
    omega: float = 1.0
    name = "invsqrt"

    def __post_init__(self):
        if not self.A1 > 0.0:
            raise InvalidParametersError("A1 must be positive")
        if not abs(self.B1) < 1.0:
            raise InvalidParametersError("|B1| must be below 1")
        if not self.omega > 0.0:
            raise InvalidParametersError("omega must be positive")

    def evaluate(self, t):
        w = self.omega
        c = 1.0 + self.B1 * np.cos(w * t)
        k = self.A1 * math.pi
        sn = np.sin(w * t)
        L = k * c**-0.5
        Ld = 0.5 * k * self.B1 * w * sn * c**-1.5
        Ldd = 0.5 * k * self.B1 * w * w * (np.cos(w * t) * c**-1.5 + 1.5 * self.B1 * sn * sn * c**-2.5)
        return L, Ld, Ldd

    def tau(self, t, spec=DEFAULT_SPEC):
        return (t + self.B1 / self.omega * np.sin(self.omega * t)) / self.A1**2

    def describe(self):
        return {"profile": self.name, "A1": self.A1, "B1": self.B1, "omega": self.omega}


@dataclass(frozen=True)
class Fixed(BoundaryProfile):
    """Static wall at L0."""

    L0: float = math.pi
    name = "fixed"

    def __post_init__(self):
        if not self.L0 > 0.0:
            raise InvalidParametersError("L0 must be positive")

    def evaluate(self, t):
        zero = np.zeros_like(np.asarray(t, dtype=float))
        if zero.ndim == 0:
            return self.L0, 0.0, 0.0
        return self.L0 + zero, zero, zero

    def tau(self, t, spec=DEFAULT_SPEC):
        return t * (math.pi / self.L0) ** 2

    def ldot_sq_integral(self, t, spec=DEFAULT_SPEC):
        return 0.0 * t

    def describe(self):
        return {"profile": self.name, "L0": self.L0}


def boundary_eval(profile, t):
    return profile.evaluate(t)


def accumulate(profile, t, spec=DEFAULT_SPEC):
    """(tau(t), int_0^t Ldot^2 ds)."""
    return float(profile.tau(t, spec)), float(profile.ldot_sq_integral(t, spec))


@dataclass(frozen=True)
class AccumulatedSweep:
    """Accumulated integrals on a sorted time grid, built in one pass."""

    t: np.ndarray
    tau: np.ndarray
    ldot_sq: np.ndarray

    def at(self, i):
        return float(self.tau[i]), float(self.ldot_sq[i])


def accumulate_grid(profile, t_grid, spec=DEFAULT_SPEC):
    """Cumulative integrals over ``t_grid`` by summing per-interval quadratures."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or np.any(np.diff(t) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    tau = np.empty_like(t)
    lsq = np.empty_like(t)
    tau[0], lsq[0] = accumulate(profile, t[0], spec)
    for i in range(1, len(t)):
        a, b = t[i - 1], t[i]
        tau[i] = tau[i - 1] + _interval(profile, "tau", a, b, spec)
        lsq[i] = lsq[i - 1] + _interval(profile, "ldot_sq_integral", a, b, spec)
    for arr in (t, tau, lsq):
        arr.setflags(write=False)
    return AccumulatedSweep(t, tau, lsq)


def _interval(profile, which, a, b, spec):
    # analytic laws are differenced directly; numeric ones integrate the piece
    own = type(profile).__dict__.get(which)
    if own is not None:
        return float(getattr(profile, which)(b, spec) - getattr(profile, which)(a, spec))
    if which == "tau":
        return integrate(lambda s: (math.pi / profile.length(s)) ** 2, a, b, spec)
    return integrate(lambda s: profile.evaluate(s)[1] ** 2, a, b, spec)


def coordinate_map(x, t, profile):
    """q = pi (x - L/2) / L, in [-pi/2, pi/2] for x in [0, L(t)]."""
    L = profile.length(t)
    x_arr = np.asarray(x, dtype=float)
    if np.any((x_arr < 0.0) | (x_arr > L)):
        raise OutOfBoxError(f"x outside [0, L(t)] with L = {float(np.max(L))}")
    # clamp the rounding of x / L at the walls
    q = np.clip(math.pi * x_arr / L - HALF_PI, -HALF_PI, HALF_PI)
    return float(q) if np.ndim(x) == 0 and np.ndim(L) == 0 else q


def _wall_distances(x, L):
    # wall distances in q, computed without cancellation at either wall
    return math.pi * x / L, math.pi * (L - x) / L


def potential_xt(x, t, profile, params, sector):
    """V^(sector)(x, t); the walls x = 0, L(t) are excluded."""
    L, _, Ldd = profile.evaluate(t)
    x_arr = np.asarray(x, dtype=float)
    if np.any((x_arr <= 0.0) | (x_arr >= L)):
        raise SingularityError("potential diverges at the walls; need 0 < x < L(t)")
    q = math.pi * x_arr / L - HALF_PI
    v = (math.pi / L) ** 2 * potential_tilde(q, params, sector) + L * Ldd / 16.0 - Ldd / (4.0 * L) * x_arr**2
    return float(v) if np.ndim(v) == 0 else v


def phase(n, x, t, profile, params, acc=None):
    """F_n(x, t); ``acc`` = (tau, int Ldot^2) if already known."""
    L, Ld, _ = profile.evaluate(t)
    tau, lsq = accumulate(profile, t) if acc is None else acc
    x = np.asarray(x, dtype=float)
    return Ld / (4.0 * L) * x**2 - L * Ld / 16.0 + lsq / 16.0 - energy(n, params) * tau


def _amplitude(state, x, L):
    x = np.asarray(x, dtype=float)
    if np.any((x < 0.0) | (x > L)):
        raise OutOfBoxError("x outside [0, L(t)]")
    sl, sr = _wall_distances(x, L)
    # x / L may round past 1 at the right wall
    q = np.clip(sl - HALF_PI, -HALF_PI, HALF_PI)
    return math.sqrt(math.pi / L) * state.evaluate(q, sl, sr)


def wavefunction(n, sector, x, t, profile, params, acc=None):
    """Complex psi_n(x, t) = sqrt(pi/L) Q_n(q) exp(i F_n(x, t))."""
    state = StationaryState(n, Sector.parse(sector), params)
    L = float(profile.length(t))
    amp = _amplitude(state, x, L)
    psi = amp * np.exp(1j * phase(n, x, t, profile, params, acc))
    return complex(psi) if np.ndim(psi) == 0 else psi


def density(n, sector, x, t, profile, params):
    """|psi_n(x, t)|^2 = (pi/L) Q_n(q)^2."""
    state = StationaryState(n, Sector.parse(sector), params)
    L = float(profile.length(t))
    rho = _amplitude(state, x, L) ** 2
    return float(rho) if np.ndim(rho) == 0 else rho

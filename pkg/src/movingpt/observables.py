"""Time-dependent expectation values built from the static moments I1, I2, I3.

With a(t) = (i/2) L1 L1dot and L1 = L/pi, a^2 = -L1^2 L1dot^2 / 4 is negative,
so the momentum radicand I3 - a^2 (I2 - I1^2) only grows while the wall moves.
"""
import math
from dataclasses import asdict, dataclass

import numpy as np

from .dynamics import _wall_distances, accumulate, phase
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_box, moments
from .stationary import HALF_PI, Sector, StationaryState


@dataclass(frozen=True)
class ObservableRecord:
    t: float
    n: int
    sector: Sector
    delta_x: float
    delta_p: float
    product: float
    avg_energy: complex

    def as_row(self):
        row = asdict(self)
        row["sector"] = self.sector.value
        row["avg_energy_re"] = self.avg_energy.real
        row["avg_energy_im"] = self.avg_energy.imag
        del row["avg_energy"]
        return row


def _state(n, sector, params):
    return StationaryState(n, Sector.parse(sector), params)


def _spread(state, spec):
    i1, i2, i3 = moments(state, spec)
    return i2 - i1 * i1, i3


def _a_squared(profile, t):
    L, Ld, _ = profile.evaluate(t)
    return -0.25 * (L / math.pi) ** 2 * (Ld / math.pi) ** 2


def _scalar(v, t):
    return float(v) if np.ndim(t) == 0 else v


def delta_x(n, sector, t, profile, params, spec=DEFAULT_SPEC):
    var, _ = _spread(_state(n, sector, params), spec)
    L = profile.length(t)
    return _scalar(L / math.pi * math.sqrt(var), t)


def delta_p(n, sector, t, profile, params, spec=DEFAULT_SPEC):
    var, i3 = _spread(_state(n, sector, params), spec)
    L = profile.length(t)
    return _scalar(math.pi / L * np.sqrt(i3 - _a_squared(profile, t) * var), t)


def uncertainty_product(n, sector, t, profile, params, spec=DEFAULT_SPEC):
    """Delta x * Delta p; the box length cancels, only a^2(t) remains."""
    var, i3 = _spread(_state(n, sector, params), spec)
    return _scalar(np.sqrt(var * (i3 - _a_squared(profile, t) * var)), t)


def energy_coefficients(n, sector, t, profile, params):
    """(h0, h1, h2) of the closed-form average energy, with g0 = 0."""
    L, Ld, Ldd = profile.evaluate(t)
    L1, L1d, L1dd = L / math.pi, Ld / math.pi, Ldd / math.pi
    ad, add = 0.5 * Ld, 0.5 * Ldd
    E = _state(n, sector, params).energy
    h0 = -(ad**2 * L1**2 - 4.0 * E) / (4.0 * L1**2) - 1j * (L1d / (2.0 * L1) + ad**2 / 2.0)
    h1 = -0.5 * (L1d * ad + L1 * add) + 1j * (L1d / (2.0 * L1) - ad * L1d)
    h2 = -0.25 * (L1 * L1dd + L1d**2) - 0.5j * L1d**2
    return h0, h1, h2


def avg_energy(n, sector, t, profile, params, spec=DEFAULT_SPEC):
    """Complex average energy h0 + h1 I1 + h2 I2."""
    i1, i2, _ = moments(_state(n, sector, params), spec)
    h0, h1, h2 = energy_coefficients(n, sector, t, profile, params)
    e = h0 + h1 * i1 + h2 * i2
    return complex(e) if np.ndim(e) == 0 else e


ORACLE_SPEC = QuadratureSpec(base_order=128, rel_tol=1e-9, max_doublings=6, abs_tol=1e-7)


def avg_energy_fd(n, sector, t, profile, params, h=1e-5, spec=ORACLE_SPEC):
    """i * int psi* d(psi)/dt dx with a central difference in t (reference route).

    psi is continued by zero outside the box, so nodes the wall sweeps past
    during the step are handled exactly.
    """
    state = _state(n, sector, params)
    L = float(profile.length(t))
    steps = []
    for tt in (t - h, t, t + h):
        acc = accumulate(profile, tt)
        steps.append((tt, float(profile.length(tt)), acc))

    def psi_at(x, tt, Lt, acc):
        sl, sr = _wall_distances(x, Lt)
        inside = sr > 0.0
        sr = np.where(inside, sr, 0.0)
        q = np.minimum(sl - HALF_PI, HALF_PI)
        amp = np.where(inside, math.sqrt(math.pi / Lt) * state.evaluate(q, sl, sr), 0.0)
        return amp * np.exp(1j * phase(n, x, tt, profile, params, acc))

    def integrand(q, sl, sr):
        x = L * sl / math.pi
        base = math.sqrt(math.pi / L) * state.evaluate(q, sl, sr) * np.exp(
            1j * phase(n, x, t, profile, params, steps[1][2]))
        fwd = psi_at(x, *steps[2])
        bwd = psi_at(x, *steps[0])
        return 1j * np.conj(base) * (fwd - bwd) / (2.0 * h) * (L / math.pi)

    re = integrate_box(lambda q, sl, sr: integrand(q, sl, sr).real, spec)
    im = integrate_box(lambda q, sl, sr: integrand(q, sl, sr).imag, spec)
    return complex(re, im)


def observe(n, sector, t, profile, params, spec=DEFAULT_SPEC):
    sector = Sector.parse(sector)
    dx = delta_x(n, sector, t, profile, params, spec)
    dp = delta_p(n, sector, t, profile, params, spec)
    return ObservableRecord(
        t=float(t),
        n=int(n),
        sector=sector,
        delta_x=dx,
        delta_p=dp,
        product=dx * dp,
        avg_energy=avg_energy(n, sector, t, profile, params, spec),
    )


def sweep(levels, sectors, t_grid, profile, params, spec=DEFAULT_SPEC):
    """Records ordered by (t, n, sector)."""
    sectors = [Sector.parse(s) for s in sectors]
    return [
        observe(n, s, float(t), profile, params, spec)
        for t in np.asarray(t_grid, dtype=float)
        for n in levels
        for s in sectors
    ]

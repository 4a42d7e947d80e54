"""Invariant checks behind ``movingpt validate``.

Each check returns ``{"check", "value", "tolerance", "pass"}``; ``value`` is
the measured worst-case residual (or the quantity compared against the
tolerance, as the check's name says).
"""
import dataclasses
import math

import numpy as np

from . import dynamics, observables, quadrature
from .dynamics import Fixed, InverseSqrtCosine, Sinusoidal
from .quadrature import integrate_box, moments
from .stationary import (
    HALF_PI,
    Sector,
    StationaryState,
    energy,
    potential_tilde,
    superpotential,
    superpotential_deriv,
    susy_intertwine,
)

SECTORS = (Sector.MINUS, Sector.PLUS)


def result(name, value, tolerance, passed=None, **extra):
    value = float(value)
    if passed is None:
        passed = bool(value <= tolerance)
    out = {"check": name, "value": value, "tolerance": float(tolerance), "pass": bool(passed)}
    out.update(extra)
    return out


def interior_grid(m):
    return np.linspace(-HALF_PI, HALF_PI, m + 2)[1:-1]


# -- stationary -------------------------------------------------------------


def schrodinger_residual(state, m=500):
    """max |-Q'' + V~ Q - E Q| / (E max|Q|) on ``m`` interior points."""
    q = interior_grid(m)
    Q = state.evaluate(q)
    Q2 = state.evaluate(q, order=2)
    V = potential_tilde(q, state.params, state.sector)
    res = np.abs(-Q2 + V * Q - state.energy * Q)
    return float(res.max() / (state.energy * np.abs(Q).max()))


def overlap_matrix(params, sector, nmax, spec=quadrature.DEFAULT_SPEC):
    # off-diagonal entries vanish, so convergence needs an absolute floor
    spec = dataclasses.replace(spec, abs_tol=max(spec.abs_tol, 1e-13))
    states = [StationaryState(n, sector, params) for n in range(nmax + 1)]
    gram = np.empty((nmax + 1, nmax + 1))
    for i, si in enumerate(states):
        for j, sj in enumerate(states[: i + 1]):
            val = integrate_box(lambda q, sl, sr: si.evaluate(q, sl, sr) * sj.evaluate(q, sl, sr), spec)
            gram[i, j] = gram[j, i] = val
    return gram


def orthonormality_error(params, sector, nmax=5, spec=quadrature.DEFAULT_SPEC):
    gram = overlap_matrix(params, sector, nmax, spec)
    return float(np.abs(gram - np.eye(nmax + 1)).max())


def intertwining_error(n, params, m=200):
    """min over a global sign s of max |(d/dq + W) Q^- - s sqrt(E) Q^+|."""
    q = interior_grid(m)
    lhs = susy_intertwine(n, params, q)
    rhs = math.sqrt(energy(n, params)) * StationaryState(n, Sector.PLUS, params).evaluate(q)
    return float(min(np.abs(lhs - rhs).max(), np.abs(lhs + rhs).max()))


def partner_identity_error(params, m=50):
    q = interior_grid(m)
    w, w1 = superpotential(q, params), superpotential_deriv(q, params)
    err_m = np.abs(potential_tilde(q, params, Sector.MINUS) - (w * w - w1))
    err_p = np.abs(potential_tilde(q, params, Sector.PLUS) - (w * w + w1))
    scale = np.maximum(1.0, np.abs(w * w))
    return float(max((err_m / scale).max(), (err_p / scale).max()))


def sign_changes(values):
    s = np.sign(values)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def node_count(state, m=10_000):
    return sign_changes(state.evaluate(interior_grid(m)))


# -- dynamics ---------------------------------------------------------------


def tdse_residual(n, sector, profile, params, times, x_frac=(0.2, 0.8), nx=13, ht=1e-4, hx_frac=1e-4):
    """Relative residual of i psi_t + psi_xx - V psi by central differences."""
    worst = 0.0
    for t in times:
        L = float(profile.length(t))
        xs = np.linspace(x_frac[0], x_frac[1], nx) * L
        hx = hx_frac * L

        def psi(x, tt):
            return dynamics.wavefunction(n, sector, x, tt, profile, params)

        centre = psi(xs, t)
        dt = (psi(xs, t + ht) - psi(xs, t - ht)) / (2.0 * ht)
        dxx = (psi(xs + hx, t) - 2.0 * centre + psi(xs - hx, t)) / hx**2
        V = dynamics.potential_xt(xs, t, profile, params, sector)
        res = np.abs(1j * dt + dxx - V * centre)
        scale = energy(n, params) * (math.pi / L) ** 2 * np.abs(centre).max()
        worst = max(worst, float(res.max() / scale))
    return worst


def rest_times(profile, t_min, t_max):
    """Instants in [t_min, t_max] where Ldot = 0."""
    if isinstance(profile, Sinusoidal):
        k = np.arange(math.ceil((t_min - HALF_PI) / math.pi), math.floor((t_max - HALF_PI) / math.pi) + 1)
        return HALF_PI + math.pi * k
    if isinstance(profile, InverseSqrtCosine):
        period = math.pi / profile.omega
        k = np.arange(math.ceil(t_min / period), math.floor(t_max / period) + 1)
        return period * k
    if isinstance(profile, Fixed):
        return np.linspace(t_min, t_max, 5)
    raise TypeError(f"no rest times known for {profile!r}")


def period(profile):
    if isinstance(profile, Sinusoidal):
        return 2.0 * math.pi
    if isinstance(profile, InverseSqrtCosine):
        return 2.0 * math.pi / profile.omega
    return 1.0


# -- observables ------------------------------------------------------------


def heisenberg_minimum(levels, sectors, t_grid, profile, params, spec=quadrature.DEFAULT_SPEC):
    return float(
        min(
            np.min(observables.uncertainty_product(n, s, t_grid, profile, params, spec))
            for n in levels
            for s in sectors
        )
    )


def product_ordering_margin(levels, t_grid, profile, params, spec=quadrature.DEFAULT_SPEC):
    """min over t, n of product^- - product^+; positive when plus is lower."""
    return float(
        min(
            np.min(
                observables.uncertainty_product(n, Sector.MINUS, t_grid, profile, params, spec)
                - observables.uncertainty_product(n, Sector.PLUS, t_grid, profile, params, spec)
            )
            for n in levels
        )
    )


def rms_sector_margin(levels, t_grid, profile, params, spec=quadrature.DEFAULT_SPEC):
    """min over t, n of dx^- - dx^+; positive when the plus sector is narrower."""
    return float(
        min(
            np.min(
                observables.delta_x(n, Sector.MINUS, t_grid, profile, params, spec)
                - observables.delta_x(n, Sector.PLUS, t_grid, profile, params, spec)
            )
            for n in levels
        )
    )


def level_ordering_margin(levels, sectors, t_grid, profile, params, spec=quadrature.DEFAULT_SPEC):
    """min over consecutive levels of the increase of dx and dp (>= 0 when ordered)."""
    levels = sorted(levels)
    worst = math.inf
    for s in sectors:
        for fn in (observables.delta_x, observables.delta_p):
            vals = [np.asarray(fn(n, s, t_grid, profile, params, spec)) for n in levels]
            for lo, hi in zip(vals, vals[1:]):
                worst = min(worst, float(np.min(hi - lo)))
    return worst


def anti_correlation_violations(levels, sectors, t_grid, profile, params, spec=quadrature.DEFAULT_SPEC, eps=1e-12):
    """Count grid steps where dx and dp move strictly in the same direction."""
    count = 0
    for s in sectors:
        for n in levels:
            ddx = np.diff(observables.delta_x(n, s, t_grid, profile, params, spec))
            ddp = np.diff(observables.delta_p(n, s, t_grid, profile, params, spec))
            moving = (np.abs(ddx) > eps) & (np.abs(ddp) > eps)
            count += int(np.count_nonzero(moving & (np.sign(ddx) == np.sign(ddp))))
    return count


def avg_energy_oracle_error(levels, sectors, times, profile, params, spec=quadrature.DEFAULT_SPEC):
    """max relative |closed form - i<psi|d_t psi>| over the given instants."""
    worst = 0.0
    for t in times:
        for n in levels:
            for s in sectors:
                closed = observables.avg_energy(n, s, t, profile, params, spec)
                ref = observables.avg_energy_fd(n, s, t, profile, params)
                worst = max(worst, abs(closed - ref) / abs(ref))
    return worst


def static_limit_error(levels, sectors, params, L0=math.pi, spec=quadrature.DEFAULT_SPEC):
    prof = Fixed(L0)
    worst = 0.0
    for n in levels:
        for s in sectors:
            for t in (0.0, 1.3, 7.9):
                e = observables.avg_energy(n, s, t, prof, params, spec)
                target = (math.pi / L0) ** 2 * energy(n, params)
                worst = max(worst, abs(e.imag), abs(e.real - target) / target)
    return worst


# -- suite ------------------------------------------------------------------


def run_suite(config):
    """Run every check for a :class:`movingpt.cli.RunConfig`; returns the list of results."""
    params, profile, spec = config.params, config.profile, config.quadrature
    levels, sectors = config.levels, config.sectors
    t_grid = config.t_grid()
    nmax = 5
    checks = []

    checks.append(result("quadrature_tolerance_budget", spec.rel_tol, 1e-9))

    tight = quadrature.QuadratureSpec(spec.base_order, max(spec.rel_tol / 2.0, 1e-14), spec.max_doublings)
    drift = 0.0
    for n in levels:
        for s in sectors:
            a = np.array(moments(StationaryState(n, s, params), spec))
            b = np.array(moments(StationaryState(n, s, params), tight))
            drift = max(drift, float(np.max(np.abs(a - b) / np.abs(b))))
    checks.append(result("quadrature_convergence", drift, max(spec.rel_tol, 1e-9)))

    spec_diff = max(abs(energy(n, params) - ((n + params.A) ** 2 - (params.B - 0.5) ** 2)) for n in range(nmax + 1))
    checks.append(result("spectrum_formula", spec_diff, 0.0))

    checks.append(result(
        "orthonormality", max(orthonormality_error(params, s, nmax, spec) for s in SECTORS), 1e-8))
    checks.append(result(
        "schrodinger_residual",
        max(schrodinger_residual(StationaryState(n, s, params)) for n in range(nmax + 1) for s in SECTORS),
        1e-6,
    ))
    checks.append(result("susy_intertwining", max(intertwining_error(n, params) for n in range(4)), 1e-7))
    checks.append(result("partner_pair_identity", partner_identity_error(params), 1e-9))

    q = interior_grid(10)
    den_err = np.abs(
        (params.alpha + params.beta - (params.beta - params.alpha) * np.sin(q))
        - (2.0 * params.A - 1.0 - 2.0 * params.B * np.sin(q))
    ).max()
    checks.append(result("denominator_identity", den_err, 1e-12))

    bad_nodes = sum(
        node_count(StationaryState(n, s, params)) != n for n in range(nmax + 1) for s in SECTORS)
    checks.append(result("node_count", bad_nodes, 0))

    variance_bad = 0
    for n in levels:
        for s in sectors:
            i1, i2, i3 = moments(StationaryState(n, s, params), spec)
            variance_bad += not (0.0 < i2 - i1 * i1 < math.pi**2 / 4.0 and i3 > 0.0)
    checks.append(result("moment_bounds", variance_bad, 0))

    if not isinstance(profile, Fixed):
        times = np.linspace(max(config.t_min, 1e-3), config.t_max, 4)
        tdse = max(tdse_residual(n, s, profile, params, times) for n in (0, 1) for s in SECTORS)
        checks.append(result("tdse_residual", tdse, 1e-3))

    sweep = dynamics.accumulate_grid(profile, t_grid, spec)
    tau_steps = np.diff(sweep.tau)
    lsq_steps = np.diff(sweep.ldot_sq)
    checks.append(result(
        "accumulated_monotone",
        int(np.count_nonzero(tau_steps <= 0.0) + np.count_nonzero(lsq_steps < 0.0)),
        0,
    ))

    hmin = heisenberg_minimum(levels, sectors, t_grid, profile, params, spec)
    checks.append(result("heisenberg_bound", hmin, 0.5 - 1e-12, passed=hmin >= 0.5 - 1e-12))
    order_margin = level_ordering_margin(levels, sectors, t_grid, profile, params, spec)
    checks.append(result("level_ordering", order_margin, 0.0, passed=order_margin >= 0.0))
    checks.append(result(
        "rms_anticorrelation",
        anti_correlation_violations(levels, sectors, t_grid, profile, params, spec),
        0,
    ))
    checks.append(result("static_limit", static_limit_error(levels, sectors, params, spec=spec), 1e-10))

    rest = rest_times(profile, config.t_min, config.t_max)
    im_rest = max(
        (abs(observables.avg_energy(n, s, t, profile, params, spec).imag) for t in rest for n in levels for s in sectors),
        default=0.0,
    )
    checks.append(result("avg_energy_im_at_rest", im_rest, 1e-10))

    per = period(profile)
    probe = np.linspace(config.t_min, config.t_max, 7)
    periodic = max(
        abs(observables.avg_energy(n, s, t, profile, params, spec)
            - observables.avg_energy(n, s, t + per, profile, params, spec))
        for t in probe for n in levels for s in sectors
    )
    checks.append(result("avg_energy_periodic", periodic, 1e-10))

    coarse = np.linspace(max(config.t_min, 0.1), config.t_max, 4)
    checks.append(result(
        "avg_energy_closed_form_vs_fd",
        avg_energy_oracle_error(levels, sectors, coarse, profile, params, spec),
        1e-4,
    ))
    return checks


def summarize(checks):
    failed = [c["check"] for c in checks if not c["pass"]]
    return {"total": len(checks), "passed": len(checks) - len(failed), "failed": failed, "all_pass": not failed}

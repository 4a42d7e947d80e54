import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from movingpt.dynamics import (
    Fixed,
    InverseSqrtCosine,
    Sinusoidal,
    accumulate,
    accumulate_grid,
    boundary_eval,
    coordinate_map,
    density,
    phase,
    potential_xt,
    wavefunction,
)
from movingpt.errors import InvalidParametersError, OutOfBoxError, SingularityError
from movingpt.quadrature import integrate
from movingpt.stationary import Sector, StationaryState, energy, potential_tilde, superpotential_deriv

from conftest import MAIN, OSCILLATING, SECTORS, SMALL_B

INV = InverseSqrtCosine(1.0, 0.5, 1.0)


def test_boundary_values():
    assert boundary_eval(Sinusoidal(), 0.0) == pytest.approx((2 * math.pi, math.pi, 0.0), abs=1e-15)
    assert boundary_eval(INV, 0.0)[0] == pytest.approx(math.pi / math.sqrt(1.5), rel=1e-15)
    assert boundary_eval(Fixed(math.pi), 3.0) == (math.pi, 0.0, 0.0)


@pytest.mark.parametrize("profile", OSCILLATING)
def test_boundary_derivatives_vs_finite_difference(profile):
    h = 1e-5
    for t in (0.3, 2.1, 5.7):
        L, Ld, Ldd = profile.evaluate(t)
        Lp, Ldp, _ = profile.evaluate(t + h)
        Lm, Ldm, _ = profile.evaluate(t - h)
        assert Ld == pytest.approx((Lp - Lm) / (2 * h), rel=1e-8, abs=1e-9)
        assert Ldd == pytest.approx((Ldp - Ldm) / (2 * h), rel=1e-8, abs=1e-9)


def test_profile_validation():
    with pytest.raises(InvalidParametersError):
        InverseSqrtCosine(1.0, 1.0, 1.0)
    with pytest.raises(InvalidParametersError):
        Fixed(0.0)


def test_coordinate_map():
    prof = Sinusoidal()
    L = prof.length(0.7)
    assert coordinate_map(0.0, 0.7, prof) == pytest.approx(-math.pi / 2)
    assert coordinate_map(L / 2, 0.7, prof) == pytest.approx(0.0, abs=1e-15)
    assert coordinate_map(L, 0.7, prof) == pytest.approx(math.pi / 2)
    with pytest.raises(OutOfBoxError):
        coordinate_map(L * 1.01, 0.7, prof)


@settings(max_examples=50, deadline=None)
@given(t=st.floats(0.0, 30.0), u=st.floats(0.0, 1.0))
def test_coordinate_map_bijection(t, u):
    for prof in OSCILLATING:
        L = prof.length(t)
        q = coordinate_map(u * L, t, prof)
        assert -math.pi / 2 <= q <= math.pi / 2
        assert (q + math.pi / 2) * L / math.pi == pytest.approx(u * L, abs=1e-12)


def test_accumulate_fixed():
    tau, lsq = accumulate(Fixed(2.0), 3.0)
    assert tau == pytest.approx(3.0 * math.pi**2 / 4.0)
    assert lsq == 0.0


def test_accumulate_invsqrt_closed_form():
    assert accumulate(INV, math.pi)[0] == pytest.approx(math.pi, rel=1e-15)
    numeric = integrate(lambda s: (math.pi / INV.length(s)) ** 2, 0.0, 2.3)
    assert accumulate(INV, 2.3)[0] == pytest.approx(numeric, rel=1e-12)


def test_accumulate_sinusoidal_trapezoid():
    prof = Sinusoidal()
    s = np.linspace(0.0, 2.0, 1_000_000)
    L, Ld, _ = prof.evaluate(s)
    tau_ref = np.trapezoid((math.pi / L) ** 2, s) if hasattr(np, "trapezoid") else np.trapz((math.pi / L) ** 2, s)
    lsq_ref = np.trapezoid(Ld**2, s) if hasattr(np, "trapezoid") else np.trapz(Ld**2, s)
    tau, lsq = accumulate(prof, 2.0)
    assert tau == pytest.approx(tau_ref, rel=1e-8)
    assert lsq == pytest.approx(lsq_ref, rel=1e-8)


@pytest.mark.parametrize("profile", OSCILLATING + (Fixed(2.0),))
def test_accumulate_grid_monotone_and_consistent(profile):
    t = np.linspace(0.0, 4 * math.pi, 60)
    sweep = accumulate_grid(profile, t)
    assert np.all(np.diff(sweep.tau) > 0.0)
    assert np.all(np.diff(sweep.ldot_sq) >= 0.0)
    for i in (7, 59):
        tau, lsq = accumulate(profile, t[i])
        assert sweep.tau[i] == pytest.approx(tau, rel=1e-10)
        assert sweep.ldot_sq[i] == pytest.approx(lsq, rel=1e-10, abs=1e-12)
    with pytest.raises(ValueError):
        accumulate_grid(profile, t[::-1])


def test_potential_fixed_profile():
    prof = Fixed(2.5)
    x = np.linspace(0.1, 2.4, 9)
    q = math.pi * x / 2.5 - math.pi / 2
    for s in SECTORS:
        np.testing.assert_allclose(potential_xt(x, 4.0, prof, MAIN, s),
                                   (math.pi / 2.5) ** 2 * potential_tilde(q, MAIN, s), rtol=1e-13)


@pytest.mark.parametrize("profile", OSCILLATING)
def test_potential_partner_relation(profile):
    t = 1.7
    L = profile.length(t)
    x = np.linspace(0.05, 0.95, 17) * L
    q = math.pi * x / L - math.pi / 2
    diff = potential_xt(x, t, profile, MAIN, "+") - potential_xt(x, t, profile, MAIN, "-")
    np.testing.assert_allclose(diff, (math.pi / L) ** 2 * 2 * superpotential_deriv(q, MAIN), rtol=1e-10, atol=1e-10)


def test_potential_hand_composed():
    prof = Sinusoidal()
    t = 10.0
    L = math.pi * (2 + math.sin(t))
    Ldd = -math.pi * math.sin(t)
    x = L / 2
    ref = (math.pi / L) ** 2 * 30.95 + L * Ldd / 16 - Ldd / (4 * L) * x * x
    assert potential_xt(x, t, prof, MAIN, Sector.MINUS) == pytest.approx(ref, rel=1e-13)


def test_potential_wall_singular():
    prof = Sinusoidal()
    with pytest.raises(SingularityError):
        potential_xt(0.0, 1.0, prof, MAIN, "-")
    with pytest.raises(SingularityError):
        potential_xt(prof.length(1.0), 1.0, prof, MAIN, "+")


@pytest.mark.parametrize("profile", OSCILLATING)
@pytest.mark.parametrize("sector", SECTORS)
def test_wavefunction_normalized(profile, sector):
    for t in (0.0, 1.1, 4.0, 9.5):
        L = float(profile.length(t))
        val = integrate(lambda x: np.abs(wavefunction(2, sector, x, t, profile, MAIN)) ** 2, 0.0, L)
        assert val == pytest.approx(1.0, abs=1e-9)


def test_wavefunction_fixed_profile():
    L0 = 2.0
    prof = Fixed(L0)
    state = StationaryState(1, Sector.PLUS, MAIN)
    for x, t in ((0.3, 0.0), (1.1, 2.5), (1.9, 7.0)):
        q = math.pi * x / L0 - math.pi / 2
        ref = math.sqrt(math.pi / L0) * state.evaluate(q) * np.exp(-1j * energy(1, MAIN) * math.pi**2 * t / L0**2)
        assert wavefunction(1, "+", x, t, prof, MAIN) == pytest.approx(ref, rel=1e-12)


def test_density_matches_stationary_profile():
    rng = np.random.default_rng(7)
    prof = Sinusoidal()
    for _ in range(20):
        t = rng.uniform(0, 20)
        L = prof.length(t)
        x = rng.uniform(0, L)
        sector = SECTORS[rng.integers(2)]
        q = math.pi * x / L - math.pi / 2
        rho = abs(wavefunction(1, sector, x, t, prof, MAIN)) ** 2
        assert rho == pytest.approx(math.pi / L * StationaryState(1, sector, MAIN).evaluate(q) ** 2, rel=1e-12)
        assert density(1, sector, x, t, prof, MAIN) == pytest.approx(rho, rel=1e-12)


def test_density_integral_and_sign():
    prof = INV
    for t in (0.0, 2.0):
        L = float(prof.length(t))
        assert integrate(lambda x: density(0, "-", x, t, prof, SMALL_B), 0.0, L) == pytest.approx(1.0, abs=1e-10)
        assert np.all(density(3, "+", np.linspace(0, L, 301), t, prof, SMALL_B) >= 0.0)


def test_density_zero_at_walls():
    prof = Sinusoidal()
    L = prof.length(3.0)
    assert density(0, "-", 0.0, 3.0, prof, MAIN) == 0.0
    assert density(0, "+", L, 3.0, prof, MAIN) == 0.0


def test_density_out_of_box():
    with pytest.raises(OutOfBoxError):
        density(0, "-", -0.1, 0.0, Sinusoidal(), MAIN)


def _width(prof, t, params):
    L = float(prof.length(t))
    x = np.linspace(0, L, 4001)
    rho = density(0, "-", x, t, prof, params)
    mean = np.trapezoid(rho * x, x) if hasattr(np, "trapezoid") else np.trapz(rho * x, x)
    var = (np.trapezoid(rho * (x - mean) ** 2, x) if hasattr(np, "trapezoid") else np.trapz(rho * (x - mean) ** 2, x))
    return L, x[np.argmax(rho)] / L, math.sqrt(var)


def test_localization_is_periodic():
    prof = Sinusoidal()
    L1, peak1, w1 = _width(prof, 3 * math.pi / 2, SMALL_B)
    L2, peak2, w2 = _width(prof, math.pi / 2, SMALL_B)
    L3, peak3, w3 = _width(prof, 3 * math.pi / 2 + 2 * math.pi, SMALL_B)
    assert L1 < L2 and w1 < w2
    assert peak1 == pytest.approx(peak2, abs=1e-3)
    assert w3 == pytest.approx(w1, rel=1e-6)


def test_phase_static_limit():
    prof = Fixed(math.pi)
    assert phase(2, 1.0, 3.0, prof, MAIN) == pytest.approx(-energy(2, MAIN) * 3.0, rel=1e-14)


def _tdse_residual(n, sector, profile, params, t, ht=1e-4, hx_frac=1e-4):
    L = float(profile.length(t))
    x = np.linspace(0.15, 0.85, 15) * L
    hx = hx_frac * L

    def psi(xx, tt):
        return np.asarray(wavefunction(n, sector, xx, tt, profile, params))

    c = psi(x, t)
    dt = (psi(x, t + ht) - psi(x, t - ht)) / (2 * ht)
    dxx = (psi(x + hx, t) - 2 * c + psi(x - hx, t)) / hx**2
    res = 1j * dt + dxx - potential_xt(x, t, profile, params, sector) * c
    return np.max(np.abs(res)) / (energy(n, params) * (math.pi / L) ** 2 * np.max(np.abs(c)))


@pytest.mark.parametrize("profile", OSCILLATING)
@pytest.mark.parametrize("sector", SECTORS)
@pytest.mark.parametrize("n", [0, 1])
def test_time_dependent_schrodinger_equation(profile, sector, n):
    for t in (0.4, 2.0, 5.3, 11.0):
        assert _tdse_residual(n, sector, profile, MAIN, t) < 1e-3

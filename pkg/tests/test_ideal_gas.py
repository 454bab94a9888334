import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coldgas import ideal_gas as ig
from coldgas.errors import DomainError
from oracles import polylog_mp

FOUR_PI = 4 * math.pi
ZETA32 = polylog_mp(1.5, 1)


@pytest.mark.parametrize("s", [1.5, 2.5])
@pytest.mark.parametrize("z", [0.0, 1e-8, 0.1, 0.49, 0.5, 0.51, 0.8, 0.99, 0.999999, 1.0])
def test_polylog_against_mpmath(s, z):
    assert abs(ig.polylog(s, z) - polylog_mp(s, z)) < 1e-12


def test_polylog_domain():
    with pytest.raises(DomainError):
        ig.polylog(1.5, 1.1)
    with pytest.raises(DomainError):
        ig.polylog(1.5, -0.1)


def test_zeta_values():
    assert ig.polylog(1.5, 1.0) == pytest.approx(2.612375, abs=1e-6)
    assert ig.polylog(2.5, 1.0) == pytest.approx(1.341487, abs=1e-6)


def test_density_examples():
    assert ig.density_from_mu(-math.inf, 1.0) == 0.0
    assert ig.density_from_mu(0.0, FOUR_PI) == pytest.approx(ZETA32, rel=1e-14)
    # series oracle value, 0.624837..., computed with mpmath
    assert ig.density_from_mu(-FOUR_PI * math.log(2), FOUR_PI) == pytest.approx(polylog_mp(1.5, 0.5), abs=1e-13)
    with pytest.raises(DomainError):
        ig.density_from_mu(0.1, 1.0)


def test_effective_mu_examples():
    assert ig.effective_mu(ZETA32, FOUR_PI) == 0.0
    assert ig.effective_mu(3 * ZETA32, FOUR_PI) == 0.0
    mu = ig.effective_mu(ZETA32 / 2, FOUR_PI)
    # root of g_{3/2}(e^x) = zeta(3/2) / 2 found independently in high precision
    import mpmath

    with mpmath.workdps(30):
        x = mpmath.findroot(lambda t: mpmath.polylog(1.5, mpmath.e**t) - mpmath.zeta(1.5) / 2, -0.2)
    assert mu / FOUR_PI == pytest.approx(float(mpmath.re(x)), abs=1e-11)


def test_free_energy_examples():
    assert ig.free_energy_ideal(0.0, 2.0) == 0.0
    T = 3.0
    expected = -T * (T / FOUR_PI) ** 1.5 * ig.ZETA_5_2
    rc = ig.critical_density(T)
    assert ig.free_energy_ideal(rc, T) == pytest.approx(expected, rel=1e-14)
    assert ig.free_energy_ideal(5 * rc, T) == pytest.approx(expected, rel=1e-14)
    rho, T = 8.0, 1.0
    assert ig.free_energy_ideal(rho, T) == pytest.approx(
        rho ** (5 / 3) * ig.free_energy_ideal(1.0, T * rho ** (-2 / 3)), rel=1e-10
    )


def test_free_energy_is_legendre_supremum():
    rho, T = 0.1, 2.0
    mus = -np.geomspace(1e-4, 50, 4000)
    vals = [m * rho - T * (T / FOUR_PI) ** 1.5 * ig.polylog(2.5, math.exp(m / T)) for m in mus]
    f0 = ig.free_energy_ideal(rho, T)
    assert max(vals) <= f0 + 1e-12
    assert max(vals) == pytest.approx(f0, abs=1e-6)


def test_critical_values():
    assert ig.critical_density(FOUR_PI) == pytest.approx(ZETA32, rel=1e-14)
    assert ig.critical_temperature(1.0) == pytest.approx(FOUR_PI / ZETA32 ** (2 / 3), rel=1e-14)
    assert ig.critical_temperature(1.0) == pytest.approx(6.6251, abs=1e-4)


@settings(max_examples=50, deadline=None)
@given(st.floats(1e-3, 1e3))
def test_critical_round_trip(T):
    assert ig.critical_temperature(ig.critical_density(T)) == pytest.approx(T, rel=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2))
def test_thermo_point_invariants(rho, T):
    p = ig.thermo_point(rho, T)
    assert p.mu_bar <= 0
    assert (p.mu_bar == 0) == (rho >= p.rho_c)
    assert p.condensate == max(rho - p.rho_c, 0.0)
    assert p.f0 <= p.mu_bar * rho + 1e-12 * abs(p.f0)


@settings(max_examples=30, deadline=None)
@given(st.floats(1e-2, 1e2), st.floats(1e-2, 1e2))
def test_derivative_is_mu(rho, T):
    rc = ig.critical_density(T)
    if abs(rho / rc - 1) < 1e-4:
        return
    h = 1e-6 * rho
    d = (ig.free_energy_ideal(rho + h, T) - ig.free_energy_ideal(rho - h, T)) / (2 * h)
    assert d == pytest.approx(ig.effective_mu(rho, T), abs=1e-5)


def test_convex_in_rho():
    T = 1.0
    rhos = np.linspace(0.01, 3 * ig.critical_density(T), 200)
    f = np.array([ig.free_energy_ideal(r, T) for r in rhos])
    assert np.all(np.diff(f, 2) >= -1e-12)


def test_decay_classes():
    assert ig.obdm_decay_class(ZETA32, FOUR_PI) == ig.ALGEBRAIC
    assert ig.obdm_decay_class(2 * ZETA32, FOUR_PI) == ig.LONG_RANGE_ORDER
    assert ig.obdm_decay_class(ZETA32 / 2, FOUR_PI) == ig.EXPONENTIAL


@pytest.mark.parametrize("rho,T", [(0.5, 1.0), (ZETA32 / 2, FOUR_PI), (1.0, 6.625), (5.0, 2.0), (1e-3, 50.0)])
def test_kernel_diagonal_is_density(rho, T):
    assert ig.obdm_kernel(rho, T, 0.0) == pytest.approx(rho, abs=1e-8)


def test_kernel_condensed_limit():
    T = FOUR_PI
    rho = 2 * ZETA32
    # thermal part at mu = 0 approaches T / (4 pi r) from the integral of the sum
    for r in (1e3, 1e4):
        excess = ig.obdm_kernel(rho, T, r) - (rho - ZETA32)
        assert excess == pytest.approx(T / (4 * math.pi * r), rel=1e-3)


def test_kernel_exponential_decay_rate():
    T, rho = 1.0, 0.3 * ig.critical_density(1.0)
    mu = ig.effective_mu(rho, T)
    r1, r2 = 20.0, 30.0
    slope = math.log(ig.obdm_kernel(rho, T, r2) / ig.obdm_kernel(rho, T, r1)) / (r2 - r1)
    # e^{-sqrt(-mu) r} / r asymptotics
    expected = -math.sqrt(-mu) - math.log(r2 / r1) / (r2 - r1)
    assert slope == pytest.approx(expected, rel=1e-2)


def test_kernel_algebraic_slope():
    T = 2.0
    rho = ig.critical_density(T)
    r = np.array([10.0, 100.0]) / math.sqrt(T)
    g = [ig.obdm_kernel(rho, T, x) for x in r]
    slope = math.log(g[1] / g[0]) / math.log(r[1] / r[0])
    assert -1.1 <= slope <= -0.9


def test_kernel_nonincreasing():
    for rho, T in [(0.5, 1.0), (ig.critical_density(1.0), 1.0), (3.0, 1.0)]:
        vals = [ig.obdm_kernel(rho, T, r) for r in np.linspace(0, 20, 41)]
        assert np.all(np.diff(vals) <= 1e-12)
        assert 0 <= min(vals) and max(vals) <= rho + 1e-8


def test_kernel_direct_sum_oracle():
    # brute force with an explicit large cutoff and integral remainder bound
    rho, T, r = 0.05, 1.5, 1.2
    mu = ig.effective_mu(rho, T)
    n = np.arange(1, 400000, dtype=float)
    direct = np.sum(np.exp(mu * n / T) * (4 * math.pi * n / T) ** -1.5 * np.exp(-T * r * r / (4 * n)))
    assert ig.obdm_kernel(rho, T, r) == pytest.approx(direct, abs=1e-10)


def test_kernel_tail_not_converged():
    from coldgas.errors import TailNotConverged

    rho = ig.critical_density(1.0)
    with pytest.raises(TailNotConverged):
        ig.obdm_kernel(rho, 1.0, 0.0, n_max=1, tol=1e-14)


def test_polylog_subnormal_fugacity():
    for z in (5e-324, 1e-310):
        assert ig.polylog(1.5, z) == z
    assert ig.effective_mu(0.15, 3.0) < 0

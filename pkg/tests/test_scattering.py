import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coldgas.errors import NonFiniteTail, NotUnitScattering, RangeTooSmall
from coldgas.scattering import (
    NoTail,
    RadialPotential,
    SoftSphere,
    Tabulated,
    born_bound,
    rescale_potential,
    scattering_length,
    soft_sphere_scattering_length,
    solve_zero_energy,
)


def soft(h, R, core=0.0):
    return RadialPotential(core, SoftSphere(h, R))


def test_hard_sphere():
    assert scattering_length(RadialPotential(1.3)) == pytest.approx(1.3, rel=1e-10)


def test_free_particle():
    assert abs(scattering_length(RadialPotential(0.0, NoTail(), 1.0))) < 1e-12


def test_soft_sphere_closed_form():
    assert abs(scattering_length(soft(2.0, 1.0)) - (1.0 - math.tanh(1.0))) < 1e-12


def test_soft_sphere_fine_step_oracle():
    # independent integration: scipy adaptive solver on the inner region, exact outside
    from scipy.integrate import solve_ivp

    sol = solve_ivp(lambda r, y: [y[1], 0.5 * 2.0 * y[0]], (0.0, 1.0), [0.0, 1.0], rtol=1e-13, atol=1e-15)
    u, du = sol.y[0, -1], sol.y[1, -1]
    assert scattering_length(soft(2.0, 1.0)) == pytest.approx(1.0 - u / du, abs=1e-10)


def test_born_examples():
    assert born_bound(RadialPotential(0.0, NoTail(), 1.0)) == 0.0
    assert born_bound(soft(2.0, 1.0)) == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert born_bound(RadialPotential(1.0)) == math.inf


def test_weak_coupling_limit():
    pot = soft(1e-4, 1.0)
    assert scattering_length(pot) / born_bound(pot) == pytest.approx(1.0, abs=1e-3)


def test_solution_has_no_nodes():
    sol = solve_zero_energy(soft(50.0, 1.0, core=0.2))
    assert np.all(sol.u >= 0)


def test_range_too_small():
    with pytest.raises(RangeTooSmall):
        solve_zero_energy(soft(1.0, 2.0), r_max=1.5)


def test_non_finite_tabulated():
    with pytest.raises(NonFiniteTail):
        RadialPotential(0.0, Tabulated((0.5, 1.0), (math.nan, 0.0)))


def test_tabulated_matches_soft_sphere_when_flat():
    tab = RadialPotential(0.0, Tabulated((0.0, 1.0), (2.0, 2.0)), 1.0)
    assert scattering_length(tab) == pytest.approx(1.0 - math.tanh(1.0), abs=1e-10)


def test_rescale_hard_sphere():
    out = rescale_potential(RadialPotential(1.0), 0.01)
    assert out.hard_core_radius == pytest.approx(0.01)
    assert scattering_length(out) == pytest.approx(0.01, rel=1e-9)


def test_rescale_soft_sphere_literal():
    # find the height giving a = 1 at radius 2 from the closed form
    from scipy.optimize import brentq

    h = brentq(lambda h: soft_sphere_scattering_length(h, 2.0) - 1.0, 0.1, 100.0, xtol=1e-15)
    pot = soft(h, 2.0)
    out = rescale_potential(pot, 0.5)
    assert out.tail.height == pytest.approx(4 * h)
    assert out.tail.radius == pytest.approx(1.0)
    assert abs(scattering_length(out) - 0.5) < 1e-6


def test_rescale_rejects_non_unit():
    with pytest.raises(NotUnitScattering):
        rescale_potential(RadialPotential(0.7), 0.5)


def test_step_halving_order():
    pot = RadialPotential(0.0, Tabulated((0.0, 0.4, 1.0), (3.0, 1.0, 0.0)))
    exact = scattering_length(pot, step=1e-4)
    from coldgas.scattering import _integrate

    errs = [abs(_integrate(pot, 4.0, h)[2] - exact) for h in (0.02, 0.01)]
    assert errs[0] / errs[1] > 12  # fourth order: ratio ~16


def test_json_round_trip():
    pot = RadialPotential(0.1, Tabulated((0.2, 0.5), (1.0, 0.5)), 0.8)
    assert RadialPotential.from_dict(pot.to_dict()) == pot


potentials = st.builds(
    lambda hs, rs: RadialPotential(0.0, Tabulated(tuple(np.cumsum(rs)), tuple(hs))),
    st.lists(st.floats(0.0, 20.0), min_size=3, max_size=3),
    st.lists(st.floats(0.05, 1.0), min_size=3, max_size=3),
)


@settings(max_examples=30, deadline=None)
@given(potentials)
def test_born_domination(pot):
    assert scattering_length(pot) <= born_bound(pot) + 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 10.0), st.floats(0.1, 10.0), st.floats(0.2, 2.0))
def test_monotone_in_potential(h1, dh, R):
    assert scattering_length(soft(h1, R)) <= scattering_length(soft(h1 + dh, R)) + 1e-12


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 20.0), st.floats(0.2, 2.0), st.floats(0.1, 0.5), st.floats(0.2, 5.0))
def test_dilation_covariance(h, R, core, lam):
    pot = soft(h, R + core, core=core)
    assert scattering_length(pot.scaled(lam)) == pytest.approx(lam * scattering_length(pot), rel=1e-9)

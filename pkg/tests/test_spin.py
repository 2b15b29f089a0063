"""Spin / energy / momentum densities and their brute-force oracles."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from numpy.testing import assert_allclose

from transpin import (ConfigurationError, FieldPhasor, analytic_spin_guided,
                      analytic_spin_surface, density_report, energy_density,
                      guided_field_phasor, momentum_density, spin_densities,
                      surface_field_phasor, time_average_oracle,
                      vector_potentials)
from transpin.constants import SI
from transpin.spin import (instantaneous_energy_sampler,
                           instantaneous_spin_sampler)

RNG = np.random.default_rng(2026)


def _random_points(spec, count):
    return (RNG.uniform(0.0, spec.geometry.a, count),
            RNG.uniform(0.0, spec.geometry.b, count),
            RNG.uniform(0.0, spec.geometry.length, count))


# ---------------------------------------------------------------------------
# potentials


def test_vector_potential_time_derivative_recovers_field(make_guided):
    """E = -dA/dt and c^2 B = -dC/dt for the physical (real) fields.

    This pins the potentials independently of the -iE/omega shortcut: the
    real part of A e^{-i omega t} is differentiated numerically in time.
    """
    spec = make_guided("TE", 2, 1, ratio=1.9)
    point = (0.21 * spec.geometry.a, 0.66 * spec.geometry.b, 0.04)
    omega = spec.omega
    dt = 1e-8 / omega

    def physical(phasor, t):
        return np.real(phasor * np.exp(-1j * omega * t))

    field = guided_field_phasor(spec, point)
    pot = vector_potentials(field, omega, SI)
    for t in (0.0, 0.3 / omega, 1.1 / omega):
        dA = (physical(pot.A, t + dt) - physical(pot.A, t - dt)) / (2 * dt)
        dC = (physical(pot.C, t + dt) - physical(pot.C, t - dt)) / (2 * dt)
        assert_allclose(-dA, physical(field.E, t),
                        atol=1e-7 * np.max(np.abs(field.E)))
        assert_allclose(-dC, SI.c**2 * physical(field.B, t),
                        atol=1e-7 * SI.c**2 * np.max(np.abs(field.B)))


@settings(max_examples=40, deadline=None)
@given(re=arrays(np.float64, 3, elements=st.floats(-10, 10)),
       im=arrays(np.float64, 3, elements=st.floats(-10, 10)))
def test_electric_spin_equals_quarter_cross_identity(re, im):
    # (eps0/2) Re[E x (iE*/omega)] == (eps0/2 omega) Im[E* x E] for any phasor
    E = re + 1j * im
    omega = 3.0e9
    field = FieldPhasor(E=E, B=np.zeros(3, dtype=complex))
    pair = spin_densities(field, omega, SI)
    expected = (SI.eps0 / (2.0 * omega)) * np.imag(np.cross(np.conj(E), E))
    assert_allclose(pair.s_e, expected, atol=1e-18 + 1e-12 * np.max(np.abs(expected)))
    assert np.all(pair.s_m == 0.0)


# ---------------------------------------------------------------------------
# closed forms vs the bilinear pipeline


@pytest.mark.parametrize("family, m, n", [("TM", 2, 1), ("TM", 1, 1),
                                          ("TE", 1, 0), ("TE", 2, 2)])
def test_pipeline_matches_guided_closed_forms(make_guided, family, m, n):
    spec = make_guided(family, m, n, ratio=1.45, amplitude=2.2)
    xs, ys, _ = _random_points(spec, 40)
    field = guided_field_phasor(spec, (xs, ys, 0.017))
    pair = spin_densities(field, spec.omega, SI)
    closed = analytic_spin_guided(spec, (xs, ys))
    scale = np.max(np.abs(closed.s_e) + np.abs(closed.s_m))
    assert np.max(np.abs(pair.s_e - closed.s_e)) <= 1e-12 * scale
    assert np.max(np.abs(pair.s_m - closed.s_m)) <= 1e-12 * scale


def test_pipeline_matches_surface_closed_forms(make_surface):
    for family in ("TM", "TE"):
        spec = make_surface(family, eta=1.7, phi_deg=55.0, amplitude=0.8)
        xs = RNG.uniform(0.0, 3.0 / spec.kappa, 32)
        field = surface_field_phasor(spec, (xs, 0.0, 0.0))
        pair = spin_densities(field, spec.omega, SI)
        closed = analytic_spin_surface(spec, xs)
        scale = np.max(np.abs(closed.total()))
        assert np.max(np.abs(pair.total() - closed.total())) <= 1e-12 * scale
        # the spin lives on the field carrying the in-quadrature pair
        dead = pair.s_e if family == "TE" else pair.s_m
        assert np.max(np.abs(dead)) <= 1e-15 * scale


def test_guided_spin_is_single_branch_and_planar(make_guided):
    for family in ("TM", "TE"):
        spec = make_guided(family, 2, 1, ratio=1.3)
        xs, ys, _ = _random_points(spec, 25)
        pair = analytic_spin_guided(spec, (xs, ys))
        dead = pair.s_m if family == "TM" else pair.s_e
        assert np.all(dead == 0.0)
        assert np.all(pair.total()[..., 2] == 0.0)


def test_evanescent_guided_mode_has_no_spin(make_guided):
    spec = make_guided("TM", 1, 1, ratio=0.7)
    xs, ys, zs = _random_points(spec, 25)
    field = guided_field_phasor(spec, (xs, ys, zs))
    pair = spin_densities(field, spec.omega, SI)
    w = energy_density(field, SI)
    scale = np.max(w) / spec.omega
    assert np.max(np.abs(pair.s_e)) <= 1e-15 * scale
    assert np.max(np.abs(pair.s_m)) <= 1e-15 * scale
    assert np.all(analytic_spin_guided(spec, (xs, ys)).total() == 0.0)


def test_spin_flips_sign_with_propagation_direction(make_guided, make_surface):
    fwd = make_guided("TE", 2, 1, ratio=1.6, direction=+1)
    bwd = make_guided("TE", 2, 1, ratio=1.6, direction=-1)
    xs, ys, _ = _random_points(fwd, 30)
    s_f = analytic_spin_guided(fwd, (xs, ys)).total()
    s_b = analytic_spin_guided(bwd, (xs, ys)).total()
    assert np.max(np.abs(s_f + s_b)) <= 1e-15 * np.max(np.abs(s_f))

    xs = RNG.uniform(0.0, 2.0 / make_surface().kappa, 16)
    s_f = analytic_spin_surface(make_surface(direction=+1), xs).total()
    s_b = analytic_spin_surface(make_surface(direction=-1), xs).total()
    assert np.max(np.abs(s_f + s_b)) <= 1e-15 * np.max(np.abs(s_f))


def test_combined_spin_is_half_of_total_for_single_branch(make_guided):
    spec = make_guided("TM", 1, 1)
    xs, ys, _ = _random_points(spec, 10)
    pair = analytic_spin_guided(spec, (xs, ys))
    assert_allclose(pair.combined(), 0.5 * pair.total(), rtol=0, atol=0)


def test_surface_spin_direction_and_sign(make_surface):
    # forward TM wave: spin along +y on the vacuum side, electric branch only
    spec = make_surface("TM")
    s = analytic_spin_surface(spec, 0.0)
    assert s.s_e[..., 1] > 0.0
    assert s.s_e[..., 0] == 0.0 and s.s_e[..., 2] == 0.0
    assert np.all(s.s_m == 0.0)


# ---------------------------------------------------------------------------
# time-average oracles


def test_spin_formula_matches_time_average(make_guided):
    spec = make_guided("TM", 1, 1)
    for point in [(0.002, 0.003, 0.0), (0.011, 0.0071, 0.12)]:
        field = guided_field_phasor(spec, point)
        scale = float(energy_density(field, SI)) / spec.omega
        averaged = time_average_oracle(
            instantaneous_spin_sampler(spec, point), spec.omega, samples=64)
        formula = spin_densities(field, spec.omega, SI).total()
        assert np.max(np.abs(averaged - formula)) <= 1e-10 * scale


def test_energy_formula_matches_time_average(make_surface):
    spec = make_surface("TE")
    point = (0.4 / spec.kappa, 0.0, 0.0)
    averaged = time_average_oracle(
        instantaneous_energy_sampler(spec, point), spec.omega, samples=128)
    field = surface_field_phasor(spec, point)
    assert_allclose(averaged, energy_density(field, SI), rtol=1e-12)


def test_oracle_converges_quadratically_in_sample_count(make_guided):
    # the trapezoid-on-a-period rule is exact for the bilinear integrand
    # once samples > 2; this guards the sampler against phase drift
    spec = make_guided("TE", 1, 0)
    point = (0.007, 0.004, 0.02)
    sampler = instantaneous_spin_sampler(spec, point)
    coarse = time_average_oracle(sampler, spec.omega, samples=8)
    fine = time_average_oracle(sampler, spec.omega, samples=256)
    assert_allclose(coarse, fine, atol=1e-13 * np.max(np.abs(fine) + 1e-300))


def test_oracle_rejects_tiny_sample_counts(make_guided):
    sampler = instantaneous_spin_sampler(make_guided(), (0.001, 0.001, 0.0))
    with pytest.raises(ConfigurationError):
        time_average_oracle(sampler, 1e9, samples=3)


# ---------------------------------------------------------------------------
# energy and momentum


def test_energy_momentum_densities_for_te10(make_guided):
    """TE10 profile: w and p_z peak at the center line, vanish at side walls."""
    spec = make_guided("TE", 1, 0, ratio=math.sqrt(2.0))
    a = spec.geometry.a
    field_mid = guided_field_phasor(spec, (a / 2, 0.004, 0.0))
    field_wall = guided_field_phasor(spec, (0.0, 0.004, 0.0))
    p_mid = momentum_density(field_mid, SI)
    assert p_mid[..., 2] > 0.0
    assert abs(p_mid[..., 0]) <= 1e-16 * p_mid[..., 2]
    assert abs(p_mid[..., 1]) <= 1e-16 * p_mid[..., 2]
    # at the wall only B_z survives -> energy but no forward momentum
    p_wall = momentum_density(field_wall, SI)
    assert abs(p_wall[..., 2]) <= 1e-16 * p_mid[..., 2]
    assert energy_density(field_wall, SI) > 0.0


def test_density_report_is_consistent(make_surface):
    spec = make_surface("TM", amplitude=1.3)
    point = (0.9 / spec.kappa, 0.0, 0.0)
    field = surface_field_phasor(spec, point)
    report = density_report(field, spec.omega, SI)
    assert_allclose(report.w, energy_density(field, SI), rtol=1e-15)
    assert_allclose(report.p, momentum_density(field, SI), rtol=1e-15)
    assert_allclose(report.spin.total(),
                    spin_densities(field, spec.omega, SI).total(), rtol=1e-15)
    # subluminal pointwise: w >= |p| c
    assert report.w >= np.linalg.norm(report.p) * SI.c


def test_surface_energy_and_momentum_profiles(make_surface):
    spec = make_surface("TM", amplitude=2.0)
    con = spec.constants
    h2 = spec.amplitude**2
    xs = np.array([0.0, 0.5 / spec.kappa, 2.0 / spec.kappa])
    field = surface_field_phasor(spec, (xs, 0.0, 0.0))
    w = energy_density(field, con)
    p_z = momentum_density(field, con)[..., 2]
    decay = np.exp(-2.0 * spec.kappa * xs)
    assert_allclose(
        w, (spec.k_z**2 * con.c**2 / (2.0 * spec.omega**2)) * con.eps0 * h2 * decay,
        rtol=1e-12)
    assert_allclose(
        p_z, (spec.k_z / (2.0 * spec.omega)) * con.eps0 * h2 * decay, rtol=1e-12)

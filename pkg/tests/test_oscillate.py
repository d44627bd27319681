"""Two-power oscillation model: synthesis, phase recovery, derivatives."""

from __future__ import annotations

import math

import numpy as np
import pytest

from rvcosmo.errors import BoundViolation, DegenerateBounds, MissingDerivatives
from rvcosmo.oscillate import (
    OscillationModel,
    f_omega_divergent,
    fit_u,
    inflection_count,
    linear_phase_model,
    log_phase_grid,
    log_phase_model,
    synth_a,
    synth_derivatives,
)
from rvcosmo.sampled import GridSeries, SampledFunction, log_grid, sample

# Phase recovered from g = t^0.4, h = t^0.8, f = t^0.6 at t = e; frozen
# from a 40-digit evaluation of (1/2) arccos((e^0.8 + e^0.4 - 2e^0.6)/(e^0.8 - e^0.4)).
ORACLE_U_AT_E = 0.7354812890007050021


def test_model_validation():
    with pytest.raises(ValueError):
        OscillationModel(alpha=0.8, beta=0.4, u=np.log)
    with pytest.raises(ValueError):
        OscillationModel(alpha=0.4, beta=0.8, u=np.log, t0=0.0)


def test_fit_u_endpoints_and_oracle():
    grid = log_grid(1.1, 1e4, 64)
    g = sample(lambda t: t ** 0.4, grid)
    h = sample(lambda t: t ** 0.8, grid)
    # arccos has sqrt sensitivity at the clamped endpoints, hence 1e-7.
    assert np.allclose(fit_u(g, h, g).values, 0.0, atol=1e-7)
    assert np.allclose(fit_u(g, h, h).values, math.pi / 2.0, atol=1e-7)
    # Mid-power oracle at t = e.
    grid_e = np.concatenate([np.linspace(1.1, 2.0, 32), [math.e], np.linspace(3.0, 9.0, 32)])
    g = sample(lambda t: t ** 0.4, grid_e)
    h = sample(lambda t: t ** 0.8, grid_e)
    f = sample(lambda t: t ** 0.6, grid_e)
    u = fit_u(g, h, f)
    at_e = u.values[np.searchsorted(grid_e, math.e)]
    assert at_e == pytest.approx(ORACLE_U_AT_E, abs=1e-12)


def test_fit_u_rejections():
    grid = log_grid(1.1, 1e4, 64)
    g = sample(lambda t: t ** 0.4, grid)
    h = sample(lambda t: t ** 0.8, grid)
    outside = SampledFunction(grid, h.values * 1.001)
    with pytest.raises(BoundViolation):
        fit_u(g, h, outside)
    with pytest.raises(DegenerateBounds):
        fit_u(g, SampledFunction(grid, g.values.copy()), g)
    with pytest.raises(ValueError):
        fit_u(g, sample(lambda t: t ** 0.8, log_grid(1.2, 1e4, 64)), g)


def test_synth_a_degenerate_phases():
    grid = log_grid(1.0, 1e6, 256)
    const0 = OscillationModel(0.4, 0.8, u=lambda t: np.zeros_like(np.asarray(t, float)))
    assert np.allclose(synth_a(const0, grid).values, grid ** 0.4, rtol=1e-14)
    const_half_pi = OscillationModel(
        0.4, 0.8, u=lambda t: np.full_like(np.asarray(t, float), math.pi / 2.0)
    )
    assert np.allclose(synth_a(const_half_pi, grid).values, grid ** 0.8, rtol=1e-13)


def test_synth_a_bound_containment():
    grid = log_phase_grid(1.0, np.exp(60.0), 2 ** 14)
    a = synth_a(log_phase_model(0.4, 0.8), grid)
    assert np.all(a.values >= grid ** 0.4 * (1.0 - 1e-12))
    assert np.all(a.values <= grid ** 0.8 * (1.0 + 1e-12))


def test_negative_exponent_term_is_retained():
    grid = log_grid(1.0, 1e6, 256)
    a = synth_a(log_phase_model(-0.4, 0.8), grid)
    # At phase multiples of pi the track touches the decaying power exactly.
    t1 = math.exp(math.pi)
    a1 = synth_a(log_phase_model(-0.4, 0.8), np.linspace(t1 - 1.0, t1 + 1.0, 33))
    idx = 16
    assert a1.values[idx] == pytest.approx(t1 ** -0.4, rel=1e-12)
    assert np.all(a.values > 0.0)


def test_synth_derivatives_match_finite_differences():
    grid = log_grid(2.0, 1e5, 2 ** 15)
    model = log_phase_model(0.4, 0.8)
    a = synth_a(model, grid)
    a_dot, a_ddot = synth_derivatives(model, grid)
    # Central differences cross-validate the analytic forms away from the
    # sign-change zeros (where relative comparison is meaningless).
    d1 = np.gradient(a.values, grid)
    mask1 = np.abs(a_dot.values) > 1e-2 * a.values / grid
    mask1[:200] = mask1[-200:] = False
    assert np.max(np.abs((d1 - a_dot.values) / a_dot.values)[mask1]) < 2e-4
    d2 = np.gradient(a_dot.values, grid)
    mask2 = np.abs(a_ddot.values) > 1e-2 * a.values / grid ** 2
    mask2[:200] = mask2[-200:] = False
    assert np.max(np.abs((d2 - a_ddot.values) / a_ddot.values)[mask2]) < 2e-4


def test_synth_derivatives_pure_power():
    grid = log_grid(1.0, 1e6, 256)
    const0 = OscillationModel(
        0.4, 0.8,
        u=lambda t: np.zeros_like(np.asarray(t, float)),
        u_dot=lambda t: np.zeros_like(np.asarray(t, float)),
        u_ddot=lambda t: np.zeros_like(np.asarray(t, float)),
    )
    a_dot, a_ddot = synth_derivatives(const0, grid)
    assert np.allclose(a_dot.values, 0.4 * grid ** -0.6, rtol=1e-13)
    assert np.allclose(a_ddot.values, 0.4 * -0.6 * grid ** -1.6, rtol=1e-13)


def test_synth_derivatives_requires_phase_derivatives():
    model = OscillationModel(0.4, 0.8, u=np.log)
    with pytest.raises(MissingDerivatives):
        synth_derivatives(model, log_grid(1.0, 10.0, 32))


def test_a_dot_positive_where_sin2u_vanishes():
    # At sin(2u) = 0 the derivative is a convex mix of the two power slopes.
    model = log_phase_model(0.4, 0.8)
    for k in range(1, 10):
        t1 = math.exp(k * math.pi / 2.0)
        a_dot, _ = synth_derivatives(model, np.geomspace(t1 / 2.0, t1, 17))
        val = a_dot.values[-1]
        assert 0.4 * t1 ** -0.6 * 0.999 <= val <= 0.8 * t1 ** -0.2 * 1.001
        assert val > 0.0


def test_inflection_count():
    grid = log_grid(1.0, 1e6, 4096)
    power = GridSeries(grid, 0.4 * -0.6 * grid ** -1.6)
    assert inflection_count(power) == 0
    _, a_ddot = synth_derivatives(log_phase_model(0.4, 0.8), log_phase_grid(1.0, np.exp(50.0), 2 ** 14))
    # ~16 phase half-periods in 50 e-folds, at least 2 inflections each.
    assert inflection_count(a_ddot) >= 25


def test_linear_phase_model():
    grid = np.linspace(1.0, 200.0, 4096)
    model = linear_phase_model(0.4, 0.8, omega=0.5)
    a = synth_a(model, grid)
    assert np.all(a.values >= grid ** 0.4 * (1 - 1e-12))
    assert np.all(a.values <= grid ** 0.8 * (1 + 1e-12))
    _, a_ddot = synth_derivatives(model, grid)
    assert inflection_count(a_ddot) >= 10


def test_f_omega_divergent_branches():
    model = log_phase_model(0.4, 0.8)
    # Phase at a multiple of pi: the alpha branch.
    assert f_omega_divergent(model, math.exp(20.0 * math.pi)) == 0.4
    # Large-t two-term display vs the exact ratio H*t.
    t = math.exp(40.0)
    grid = np.geomspace(1.0, t, 33)
    a = synth_a(model, grid).values[-1]
    a_dot = synth_derivatives(model, grid)[0].values[-1]
    assert f_omega_divergent(model, t) == pytest.approx(t * a_dot / a, abs=1e-4)
    # Phase at pi/2: F = beta exactly in the large-t display.
    t_half = math.exp(math.pi / 2.0 + 24.0 * math.pi)
    assert f_omega_divergent(model, t_half) == pytest.approx(0.8, abs=1e-10)


def test_f_omega_divergent_exact_ratio_before_asymptotia():
    model = log_phase_model(0.4, 0.8)
    t = 10.0  # t^(alpha-beta) = 10^-0.4, far from the large-t regime
    grid = np.geomspace(1.0, t, 33)
    a = synth_a(model, grid).values[-1]
    a_dot = synth_derivatives(model, grid)[0].values[-1]
    assert f_omega_divergent(model, t) == pytest.approx(t * a_dot / a, rel=1e-12)


def test_log_phase_grid_contains_phase_extrema():
    n = 10 ** 4
    grid = log_phase_grid(1.0, np.exp(40.0), n)
    assert len(grid) <= n
    assert np.all(np.diff(grid) > 0.0)
    for k in range(0, 25):
        t_k = math.exp(k * math.pi / 2.0)
        assert np.min(np.abs(grid - t_k)) / t_k < 1e-15

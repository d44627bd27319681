"""Threshold functional M(mu), characteristic roots, fundamental pairs."""

from __future__ import annotations

import numpy as np
import pytest

from rvcosmo.errors import (
    ComplexRoots,
    CriticalGamma,
    IntegrationError,
    NotSlowlyVarying,
    SingularEos,
)
from rvcosmo.gammafun import (
    DEFAULT_SCHEDULE,
    Regime,
    char_roots,
    fundamental_pair,
    gamma_of_w,
    m_functional,
    mu_lambda,
)
from rvcosmo.sampled import GridSeries, SampledFunction, log_grid, sample


def constant_mu(c):
    return lambda t: c * np.ones_like(np.asarray(t, dtype=float))


def test_char_roots_identities():
    rng = np.random.default_rng(1)
    for gamma in rng.uniform(-5.0, 0.25, 1000):
        a, b = char_roots(gamma)
        assert a <= b
        assert a + b == pytest.approx(1.0, abs=1e-12)
        assert a * b == pytest.approx(gamma, abs=1e-12)
    assert char_roots(0.25) == (0.5, 0.5)
    with pytest.raises(ComplexRoots):
        char_roots(0.26)


def test_gamma_of_w_landmarks():
    assert gamma_of_w(0.0).gamma == pytest.approx(2.0 / 9.0, abs=1e-15)
    assert gamma_of_w(0.0).alpha == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert gamma_of_w(1.0 / 3.0).gamma == pytest.approx(0.25, abs=1e-15)
    assert gamma_of_w(1.0).gamma == pytest.approx(2.0 / 9.0, abs=1e-15)
    with pytest.raises(SingularEos):
        gamma_of_w(-1.0)


def test_m_functional_constant():
    result = m_functional(constant_mu(2.0 / 9.0))
    assert result.gamma == pytest.approx(2.0 / 9.0, abs=1e-6)
    assert result.converged
    assert result.regime is Regime.REGULAR
    assert result.roots == pytest.approx((1.0 / 3.0, 2.0 / 3.0), abs=1e-9)


def test_m_functional_log_decay_vanishes():
    schedule = tuple(10.0 * 10.0 ** k for k in range(14))
    result = m_functional(lambda t: 1.0 / np.log(t) ** 2, x_schedule=schedule)
    assert abs(result.gamma) < 1e-3
    assert result.regime is Regime.REGULAR


def test_m_functional_oscillatory_regime():
    result = m_functional(constant_mu(0.3))
    assert result.regime is Regime.OSCILLATORY
    assert result.roots is None


def test_m_functional_critical_band():
    result = m_functional(constant_mu(0.25))
    assert result.regime is Regime.CRITICAL
    assert result.roots == (0.5, 0.5)


def test_m_functional_divergent_is_result_not_error():
    result = m_functional(lambda t: 0.25 + 0.3 * np.sin(np.log(t)))
    assert result.regime is Regime.DIVERGENT
    assert not result.converged
    assert result.roots is None


def test_m_functional_linearity():
    mu1 = lambda t: 0.1 + 1.0 / t
    mu2 = lambda t: 0.05 + np.exp(-t / 50.0)
    a, b = 0.3, 1.7
    g1 = m_functional(mu1).gamma
    g2 = m_functional(mu2).gamma
    g12 = m_functional(lambda t: a * mu1(t) + b * mu2(t)).gamma
    assert abs(g12 - (a * g1 + b * g2)) < 1e-8


def test_m_functional_sampled_input():
    grid = np.geomspace(1.0, 1e7, 2 ** 16)
    mu = GridSeries(grid, 2.0 / 9.0 * np.ones_like(grid))
    result = m_functional(mu)
    assert result.gamma == pytest.approx(2.0 / 9.0, abs=1e-5)
    short = GridSeries(grid[grid < 1e4], 2.0 / 9.0 * np.ones(int((grid < 1e4).sum())))
    with pytest.raises(IntegrationError):
        m_functional(short)


def test_m_functional_schedule_checks():
    with pytest.raises(ValueError):
        m_functional(constant_mu(0.1), x_schedule=(10.0, 20.0, 15.0, 40.0, 80.0, 2000.0))
    with pytest.raises(ValueError):
        m_functional(constant_mu(0.1), x_schedule=(10.0, 20.0, 40.0))
    with pytest.raises(ValueError):
        m_functional(constant_mu(0.1), x_schedule=(10.0, 20.0, 40.0, 80.0))


def test_fundamental_pair_constant_slow_part():
    gamma = 2.0 / 9.0
    grid = log_grid(1.0, 1e8, 4096)
    L1 = SampledFunction(grid, np.full_like(grid, 2.0))
    y1, y2 = fundamental_pair(gamma, L1)
    alpha, beta = char_roots(gamma)
    assert np.allclose(y1.values, 2.0 * grid ** alpha, rtol=1e-12)
    assert np.allclose(y2.values, grid ** beta / ((1.0 - 2.0 * alpha) * 2.0), rtol=1e-12)
    # Both members solve y'' + gamma/t^2 y = 0 exactly for constant L.
    for y, exponent in ((y1, alpha), (y2, beta)):
        resid = exponent * (exponent - 1.0) + gamma
        assert abs(resid) < 1e-12


def test_fundamental_pair_log_slow_part():
    grid = log_grid(1.0, 1e8, 4096)
    L1 = SampledFunction(grid, np.log(grid) + 3.0)
    y1, y2 = fundamental_pair(0.21, L1)
    assert np.all(y2.values > 0.0)


def test_fundamental_pair_rejections():
    grid = log_grid(1.0, 1e8, 4096)
    L1 = SampledFunction(grid, np.full_like(grid, 1.0))
    with pytest.raises(CriticalGamma):
        fundamental_pair(0.25, L1)
    with pytest.raises(ComplexRoots):
        fundamental_pair(0.3, L1)
    with pytest.raises(NotSlowlyVarying):
        fundamental_pair(0.2, sample(lambda t: t ** 0.7, grid))


def test_mu_lambda_shift():
    grid = log_grid(1.0, 1e3, 64)
    mu = GridSeries(grid, np.full_like(grid, 2.0 / 9.0))
    shifted = mu_lambda(mu, 3.0)
    assert np.allclose(shifted.values, 2.0 / 9.0 - grid ** 2)
    assert np.array_equal(shifted.grid, grid)


def test_default_schedule_shape():
    assert len(DEFAULT_SCHEDULE) == 13
    assert DEFAULT_SCHEDULE[0] == 10.0
    assert DEFAULT_SCHEDULE[-1] == 10.0 * 2.0 ** 12

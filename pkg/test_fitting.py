"""
Tests for the RK4 integrator and the relaxation-rate fitter
"""
import logging
import math

import numpy as np
import pytest

from src.errors import FitError, StepSizeError
from src.fitting import DecayRateFitter, fit_decay_rate
from src.integrator import (
    IntegrationSettings,
    affine_generator,
    propagate_linear,
    rk4_step,
    rk4_step_matrix,
)


def test_settings_validation():
    with pytest.raises(StepSizeError):
        IntegrationSettings(step=0.0, t_end=1.0)
    with pytest.raises(StepSizeError):
        IntegrationSettings(step=2.0, t_end=1.0)
    with pytest.raises(StepSizeError):
        IntegrationSettings(step=0.1, t_end=1.0, record_stride=0)


@pytest.mark.parametrize('omega, gamma, expected', [
    (1.0, 0.0, 0.001),
    (1.0, 0.04, 0.001),
    (1.0, 50.0, 0.0002),
    (10.0, 1.0, 0.0001),
])
def test_default_step_bound(omega, gamma, expected):
    assert IntegrationSettings.default_step(omega, gamma) == pytest.approx(expected)


def test_check_bound():
    IntegrationSettings(step=0.001, t_end=1.0).check_bound(1.0, 0.5)
    with pytest.raises(StepSizeError):
        IntegrationSettings(step=0.002, t_end=1.0).check_bound(1.0, 0.5)


def test_frame_times():
    times = IntegrationSettings(step=0.01, t_end=1.0, record_stride=10).times()
    assert times.size == 11
    assert times[-1] == pytest.approx(1.0)


def test_rk4_step_exponential():
    # One RK4 step reproduces the fourth-order Taylor polynomial of e^{-h}
    h = 0.1
    y = rk4_step(lambda v: -v, np.array([1.0]), h)
    assert y[0] == pytest.approx(1 - h + h ** 2 / 2 - h ** 3 / 6 + h ** 4 / 24, abs=1e-15)


def test_step_matrix_matches_rk4_step():
    generator = np.array([[-0.3, 1.0j], [0.5, -0.1]])
    y = np.array([0.2 + 0.1j, -0.7])
    np.testing.assert_allclose(rk4_step_matrix(generator, 0.05) @ y,
                               rk4_step(lambda v: generator @ v, y, 0.05), atol=1e-15)


def test_propagate_linear_rotation():
    generator = np.array([[0.0, -1.0], [1.0, 0.0]])
    settings = IntegrationSettings(step=0.001, t_end=math.pi / 2, record_stride=10)
    frames = propagate_linear(generator, np.array([1.0, 0.0]), settings)
    t = settings.times()
    np.testing.assert_allclose(frames[:, 0], np.cos(t), atol=1e-10)
    np.testing.assert_allclose(frames[:, 1], np.sin(t), atol=1e-10)


def test_propagate_linear_runs_frame_check():
    seen = []
    settings = IntegrationSettings(step=0.1, t_end=1.0, record_stride=2)
    propagate_linear(np.zeros((1, 1)), np.array([1.0]), settings, frame_check=lambda t, y: seen.append(t))
    assert len(seen) == 5


def test_affine_generator_relaxation():
    # dy/dt = -2 (y - 0.5) relaxes to 0.5
    generator = affine_generator(lambda y: -2.0 * y + 1.0, 1)
    np.testing.assert_allclose(generator, [[-2.0, 1.0], [0.0, 0.0]])
    settings = IntegrationSettings(step=0.001, t_end=3.0, record_stride=100)
    frames = propagate_linear(generator, np.array([1.0, 1.0], dtype=complex), settings)
    expected = 0.5 + 0.5 * np.exp(-2.0 * settings.times())
    np.testing.assert_allclose(frames[:, 0].real, expected, atol=1e-10)


def _relaxing_series(rate, asymptote, amplitude, span_rates, count=2001):
    times = np.linspace(0.0, span_rates / rate, count)
    return times, asymptote + amplitude * np.exp(-rate * times)


@pytest.mark.parametrize('rate', [0.01, 0.12, 1.5, 40.0])
def test_fit_recovers_rate(rate):
    times, values = _relaxing_series(rate, -0.2, 1.2, span_rates=15.0)
    assert fit_decay_rate(times, values) == pytest.approx(rate, rel=1e-6)


def test_fit_corrects_unrelaxed_tail():
    # Over 4 lifetimes the tail mean is a biased asymptote
    times, values = _relaxing_series(1.5, 0.3, 0.7, span_rates=4.0)
    fit = DecayRateFitter().fit(times, values)
    assert fit.rate == pytest.approx(1.5, rel=1e-6)
    assert fit.asymptote == pytest.approx(0.3, abs=1e-6)


def test_fit_reports_log_linear_seed():
    times, values = _relaxing_series(0.5, -1 / 3, 4 / 3, span_rates=20.0)
    fit = DecayRateFitter().fit(times, values)
    assert fit.log_linear_rate == pytest.approx(0.5, rel=0.05)
    assert fit.window_points >= DecayRateFitter.MIN_WINDOW_POINTS


def test_fit_rejects_constant_series():
    times = np.linspace(0.0, 10.0, 101)
    with pytest.raises(FitError):
        fit_decay_rate(times, np.full_like(times, -1.0))


def test_fit_rejects_short_span():
    times, values = _relaxing_series(0.12, -1.0, 2.0, span_rates=1.0)
    with pytest.raises(FitError, match='spans'):
        fit_decay_rate(times, values)


def test_fit_rejects_malformed_input():
    with pytest.raises(FitError):
        fit_decay_rate(np.arange(3.0), np.arange(3.0))
    with pytest.raises(FitError):
        fit_decay_rate(np.array([0.0, 1.0, 1.0, 2.0, 3.0, 4.0]), np.ones(6))


def test_fit_warns_on_oscillating_residual(caplog):
    times = np.linspace(0.0, 20.0, 2001)
    values = np.exp(-0.5 * times) * (1.0 + 0.3 * np.cos(3.0 * times))
    with caplog.at_level(logging.WARNING):
        DecayRateFitter().fit(times, values)
    assert 'not monotone' in caplog.text

"""
Tests for weak values, the weak decay law and the discretized-bath oracle
"""
import logging
import math

import numpy as np
import pytest

from src.errors import ConfigError, PostSelectionError, RecurrenceHorizonError
from src.qm_core import Operator2, PureState, SystemParams, pauli, projector_onto, x_polarized_state
from src.weak_measurement import (
    BathDiscretization,
    DecayModel,
    PostSelection,
    bath_amplitude_oracle,
    bath_spectrum,
    selection_span,
    weak_lifetime,
    weak_lifetime_quadrature,
    weak_survival,
    weak_value,
    weak_zeno_time,
    x_polarized_selection,
)
from src.zeno_dynamics import ZenoMethod, zeno_time_geometric

TOL = 1e-12
# Quadrature of the weak decay law agrees with 1/(Gamma + 2/span) only for small Gamma*span
QUADRATURE_MAX_GAMMA_SPAN = 0.02
LIFETIME_AGREEMENT = 0.01
# Golden-rule bath versus exp(-Gamma t) on [0, 2/Gamma]
BATH_GAMMA = 0.1
BATH_AGREEMENT = 0.02

OMEGA_ONE = SystemParams(1.0)


def test_weak_value_of_identity_is_one():
    sel = x_polarized_selection(0.0, 1.0)
    assert weak_value(Operator2.identity(), sel, OMEGA_ONE, 0.3) == pytest.approx(1.0, abs=TOL)


def test_weak_value_of_rotated_projector():
    # Post-selection on x, projector onto the state rotated by pi/4 about z
    rotated = PureState.normalized([1.0, np.exp(1j * math.pi / 4)])
    sel = PostSelection(psi_i=x_polarized_state(), psi_f=x_polarized_state(), t_i=0.0, t_f=math.pi / 2)
    value = weak_value(projector_onto(rotated), sel, OMEGA_ONE, 0.0)
    expected = math.cos(math.pi / 8) ** 2 / math.cos(math.pi / 4)
    assert value.real == pytest.approx(expected, abs=1e-12)
    assert value.real == pytest.approx(1.2071, abs=1e-4)


def test_weak_value_of_x_projector_mid_window():
    sel = x_polarized_selection(0.0, math.pi / 2)
    value = weak_value(projector_onto(x_polarized_state()), sel, OMEGA_ONE, math.pi / 4)
    assert value.real == pytest.approx(math.cos(math.pi / 8) ** 2 / math.cos(math.pi / 4), abs=TOL)
    assert value.real == pytest.approx(1.2071, abs=1e-4)
    assert value.imag == pytest.approx(0.0, abs=TOL)


def test_weak_value_can_leave_spectrum():
    # Weak values of a projector are not confined to [0, 1]
    rotated = PureState.normalized([1.0, np.exp(1j * math.pi / 4)])
    sel = PostSelection(psi_i=x_polarized_state(), psi_f=x_polarized_state(), t_i=0.0, t_f=math.pi / 2)
    assert weak_value(projector_onto(rotated), sel, OMEGA_ONE, 0.0).real > 1.0


def test_weak_value_orthogonal_selection():
    sel = x_polarized_selection(0.0, math.pi)
    with pytest.raises(PostSelectionError):
        weak_value(pauli('z'), sel, OMEGA_ONE, math.pi / 2)


def test_weak_value_requires_time_inside_window():
    sel = x_polarized_selection(0.0, 1.0)
    with pytest.raises(ConfigError):
        weak_value(pauli('z'), sel, OMEGA_ONE, 1.5)


def test_post_selection_window_must_be_ordered():
    with pytest.raises(ConfigError):
        x_polarized_selection(1.0, 1.0)


def test_weak_survival_endpoints_exact():
    model = DecayModel(1.0)
    assert weak_survival(model, 0.0, 1.0, 0.0) == 1.0
    assert weak_survival(model, 0.0, 1.0, 1.0) == 0.0
    assert weak_survival(model, 2.0, 5.0, 2.0) == 1.0
    assert weak_survival(model, 2.0, 5.0, 5.0) == 0.0


def test_weak_survival_midpoint():
    assert weak_survival(DecayModel(1.0), 0.0, 1.0, 0.5) == pytest.approx(0.37754, abs=1e-5)


def test_weak_survival_zero_rate_is_linear_ramp():
    for t in np.linspace(0.0, 2.0, 9):
        ramp = weak_survival(DecayModel(0.0), 0.0, 2.0, t)
        assert ramp == pytest.approx(1.0 - t / 2.0, abs=TOL)
        assert weak_survival(DecayModel(1e-8), 0.0, 2.0, t) == pytest.approx(ramp, abs=1e-6)


@pytest.mark.parametrize('gamma', [0.0, 0.1, 1.0, 5.0])
def test_weak_survival_strictly_decreasing(gamma):
    model = DecayModel(gamma)
    values = [weak_survival(model, 0.0, 1.0, t) for t in np.linspace(0.0, 1.0, 101)]
    assert all(b < a for a, b in zip(values, values[1:]))
    assert all(0.0 <= v <= 1.0 for v in values)


def test_weak_survival_rejects_time_outside_window():
    with pytest.raises(ConfigError):
        weak_survival(DecayModel(1.0), 0.0, 1.0, 1.1)


def test_decay_model_rejects_negative_rate():
    with pytest.raises(ConfigError):
        DecayModel(-0.1)


@pytest.mark.parametrize('gamma, expected', [(0.0, 0.5), (1.0, 1 / 3)])
def test_weak_lifetime_values(gamma, expected):
    assert weak_lifetime(DecayModel(gamma), 0.0, 1.0) == pytest.approx(expected, abs=TOL)


def test_weak_lifetime_warns_at_large_dissipation(caplog):
    with caplog.at_level(logging.WARNING):
        weak_lifetime(DecayModel(2.0), 0.0, 1.0)
    assert 'small-dissipation' in caplog.text


def test_quadrature_matches_closed_form():
    for gamma in (0.0, 0.01, 0.5, 3.0):
        area, closed = weak_lifetime_quadrature(DecayModel(gamma), 0.0, 2.0)
        assert area == pytest.approx(closed, abs=1e-10)


@pytest.mark.parametrize('gamma_span', np.linspace(0.0, QUADRATURE_MAX_GAMMA_SPAN, 5))
def test_quadrature_agrees_with_lifetime_in_small_dissipation_regime(gamma_span):
    span = 1.5
    model = DecayModel(gamma_span / span)
    area, _ = weak_lifetime_quadrature(model, 0.0, span)
    lifetime = weak_lifetime(model, 0.0, span)
    assert abs(area - lifetime) / lifetime < LIFETIME_AGREEMENT


def test_selection_span():
    assert selection_span(0.5, 8) == 4.0
    with pytest.raises(ConfigError):
        selection_span(0.5, 0)


def test_weak_zeno_time_without_decay():
    # Gamma = 0 reduces to tau_M sqrt(N/2)
    estimate = weak_zeno_time(0.0, 1.0, 8)
    assert estimate.tau_z == pytest.approx(2.0, abs=TOL)
    assert estimate.method is ZenoMethod.WEAK


def test_weak_zeno_time_value():
    assert weak_zeno_time(1.0, 1.0, 2).tau_z == pytest.approx(0.70711, abs=1e-5)


def test_weak_zeno_time_flags_large_dissipation(caplog):
    with caplog.at_level(logging.WARNING):
        estimate = weak_zeno_time(1.0, 1.0, 100)
    assert estimate.regime_warning
    assert 'small-dissipation' in caplog.text


def test_weak_zeno_time_small_dissipation_is_unflagged(caplog):
    with caplog.at_level(logging.WARNING):
        estimate = weak_zeno_time(0.01, 1.0, 10)
    assert not estimate.regime_warning
    assert 'small-dissipation' not in caplog.text


@pytest.mark.parametrize('gamma', [0.0, 0.3, 2.0])
@pytest.mark.parametrize('tau_m, n_big', [(0.1, 10), (1.0, 100), (2.5, 3)])
def test_weak_zeno_time_is_geometric_mean(gamma, tau_m, n_big):
    estimate = weak_zeno_time(gamma, tau_m, n_big)
    lifetime = weak_lifetime(DecayModel(gamma), 0.0, selection_span(tau_m, n_big))
    assert estimate.tau_l == pytest.approx(lifetime, abs=TOL)
    assert estimate.tau_z == pytest.approx(zeno_time_geometric(lifetime, tau_m).tau_z, abs=TOL)


def test_bath_calibration():
    bath = BathDiscretization.for_decay_rate(BATH_GAMMA)
    assert bath.delta_e == pytest.approx(BATH_GAMMA / 20)
    assert bath.n_side * bath.delta_e >= 50 * BATH_GAMMA - TOL
    assert bath.golden_rule_rate == pytest.approx(BATH_GAMMA, abs=TOL)
    assert bath.recurrence_time == pytest.approx(2 * math.pi / bath.delta_e)


def test_bath_spectrum_weights_sum_to_one():
    bath = BathDiscretization(n_side=20, delta_e=0.05, coupling=0.03)
    energies, weights = bath_spectrum(bath)
    assert energies.size == 2 * 20 + 2
    assert weights.sum() == pytest.approx(1.0, abs=TOL)


def test_bath_oracle_starts_on_reference_level():
    bath = BathDiscretization(n_side=20, delta_e=0.05, coupling=0.03)
    assert abs(bath_amplitude_oracle(bath, 0.0)) == pytest.approx(1.0, abs=TOL)


def test_uncoupled_bath_never_decays():
    bath = BathDiscretization(n_side=50, delta_e=0.01, coupling=0.0)
    amplitudes = bath_amplitude_oracle(bath, np.linspace(0.0, 100.0, 21))
    np.testing.assert_allclose(np.abs(amplitudes), 1.0, atol=TOL)


def test_bath_oracle_beyond_recurrence_horizon():
    bath = BathDiscretization(n_side=10, delta_e=0.1, coupling=0.01)
    with pytest.raises(RecurrenceHorizonError):
        bath_amplitude_oracle(bath, bath.recurrence_time * 1.01)


def test_bath_modulus_non_increasing_before_half_recurrence():
    bath = BathDiscretization.for_decay_rate(BATH_GAMMA)
    times = np.linspace(0.0, 0.5 * bath.recurrence_time, 2001)
    modulus = np.abs(bath_amplitude_oracle(bath, times, spectrum=bath_spectrum(bath)))
    # Any rise above the running minimum is ripple, bounded well below 2%
    assert np.max(modulus - np.minimum.accumulate(modulus)) < BATH_AGREEMENT


def _bath_error(spacing_ratio):
    bath = BathDiscretization.for_decay_rate(BATH_GAMMA, spacing_ratio=spacing_ratio)
    times = np.linspace(0.0, 2.0 / BATH_GAMMA, 41)
    modulus = np.abs(bath_amplitude_oracle(bath, times, spectrum=bath_spectrum(bath)))
    target = np.exp(-BATH_GAMMA * times)
    return float(np.max(np.abs(modulus - target) / target))


def test_golden_rule_bath_reproduces_exponential_decay():
    assert _bath_error(20.0) < BATH_AGREEMENT


def test_golden_rule_bath_at_one_lifetime():
    bath = BathDiscretization.for_decay_rate(BATH_GAMMA)
    modulus = abs(bath_amplitude_oracle(bath, 1.0 / BATH_GAMMA))
    assert modulus == pytest.approx(math.exp(-1.0), rel=BATH_AGREEMENT)


def test_finer_bath_spacing_does_not_degrade_agreement():
    coarse = _bath_error(10.0)
    fine = _bath_error(20.0)
    assert fine <= coarse + 1e-3

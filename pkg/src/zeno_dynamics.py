"""
Zeno Dynamics Module - Survival under free evolution and frequent projective measurement
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ConfigError, DivergentZenoTimeError, RegimeError
from .qm_core import (
    PureState,
    SystemParams,
    expectation,
    projector_onto,
    propagator,
    system_hamiltonian,
)

logger = logging.getLogger(__name__)

# Below this energy uncertainty the state is treated as stationary
MIN_DELTA_H = 1e-12


class ZenoMethod(str, Enum):
    """Which formula produced a Zeno time"""
    VARIANCE = 'variance'
    GEOMETRIC = 'geometric'
    WEAK = 'weak'
    THERMAL = 'thermal'


@dataclass(frozen=True)
class MeasurementSchedule:
    """n equally spaced non-selective measurements over [0, tau_total]"""

    tau_total: float
    n_measurements: int

    def __post_init__(self):
        if not math.isfinite(self.tau_total) or self.tau_total <= 0:
            raise ConfigError('tau', "tau > 0", self.tau_total)
        if int(self.n_measurements) != self.n_measurements or self.n_measurements < 1:
            raise ConfigError('n_measurements', "integer >= 1", self.n_measurements)

    @property
    def tau_m(self) -> float:
        return self.tau_total / self.n_measurements


@dataclass(frozen=True)
class ZenoEstimate:
    """
    Bundle of timescales behind one Zeno time

    Fields not produced by a given method are NaN; tau_z and method are
    always set.
    """

    tau_z: float
    method: ZenoMethod
    delta_h: float = math.nan
    tau_m: float = math.nan
    tau_l: float = math.nan
    regime_warning: bool = field(default=False, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.tau_z) or self.tau_z <= 0:
            raise ConfigError('tau_z', "finite and > 0", self.tau_z)
        for name in ('delta_h', 'tau_m', 'tau_l'):
            value = getattr(self, name)
            if not math.isnan(value) and (not math.isfinite(value) or value <= 0):
                raise ConfigError(name, "finite and > 0 when set", value)

    def as_row(self) -> dict:
        return {
            'method': self.method.value,
            'delta_H': self.delta_h,
            'tau_Z': self.tau_z,
            'tau_M': self.tau_m,
            'tau_L': self.tau_l,
        }


def survival_probability_exact(p: SystemParams, s: PureState, t: float) -> float:
    """|<s|U(t)|s>|^2"""
    if t < 0:
        raise ConfigError('t', "t >= 0", t)
    amplitude = np.vdot(s.amplitudes, s.evolve(propagator(p, t)))
    return float(min(1.0, abs(amplitude) ** 2))


def survival_probability_quadratic(delta_h: float, t: float) -> float:
    """
    Short-time survival 1 - (dH t)^2, clamped at zero

    Only meaningful for dH*t << 1; a warning is logged once the clamp engages.
    """
    if t < 0:
        raise ConfigError('t', "t >= 0", t)
    if delta_h < 0:
        raise ConfigError('delta_H', "delta_H >= 0", delta_h)
    value = 1.0 - (delta_h * t) ** 2
    if value < 0:
        logger.warning(f"⚠ Quadratic survival clamped at 0 (dH*t = {delta_h * t:.3g})")
        return 0.0
    return value


def energy_variance(p: SystemParams, s: PureState) -> float:
    """Energy uncertainty dH = ||(H - <H>) s|| / ||s||"""
    h = system_hamiltonian(p)
    mean = expectation(h, s).real
    centred = s.evolve(h) - mean * s.amplitudes
    return float(np.linalg.norm(centred) / np.linalg.norm(s.amplitudes))


def zeno_time_variance(p: SystemParams, s: PureState) -> ZenoEstimate:
    """tau_Z = 1/dH"""
    delta_h = energy_variance(p, s)
    if delta_h < MIN_DELTA_H:
        raise DivergentZenoTimeError(
            f"Energy uncertainty {delta_h:.3g} vanishes; an energy eigenstate never decays"
        )
    return ZenoEstimate(tau_z=1.0 / delta_h, method=ZenoMethod.VARIANCE, delta_h=delta_h)


def pulsed_survival_formula(delta_h: float, sched: MeasurementSchedule) -> float:
    """[1 - (dH tau/n)^2]^n"""
    if delta_h < 0:
        raise ConfigError('delta_H', "delta_H >= 0", delta_h)
    x = delta_h * sched.tau_m
    if x >= 1.0:
        raise RegimeError(f"dH*tau/n = {x:.3g} is outside the quadratic regime (< 1)")
    # log1p keeps [1 - x^2]^n accurate for n ~ 1e6
    return math.exp(sched.n_measurements * math.log1p(-x * x))


def pulsed_survival_zeno_ratio(tau: float, tau_m: float, tau_z: float) -> float:
    """[1 - (tau_M/tau_Z)^2]^(tau/tau_M)"""
    if tau_m <= 0 or tau_z <= 0:
        raise ConfigError('tau_M, tau_Z', "both > 0", (tau_m, tau_z))
    ratio = tau_m / tau_z
    if ratio >= 1.0:
        raise RegimeError(f"tau_M/tau_Z = {ratio:.3g} must be < 1")
    return math.exp((tau / tau_m) * math.log1p(-ratio * ratio))


def pulsed_survival_simulated(p: SystemParams, s: PureState, sched: MeasurementSchedule) -> float:
    """
    Brute-force pulsed survival

    Propagates for tau/n, projects onto the initial state and keeps the
    surviving branch, n times over.
    """
    step = propagator(p, sched.tau_m)
    monitor = projector_onto(s)
    vector = s.amplitudes.copy()
    survival = 1.0
    for _ in range(sched.n_measurements):
        vector = monitor.entries @ (step.entries @ vector)
        weight = float(np.vdot(vector, vector).real)
        survival *= weight
        if weight == 0.0:
            break
        vector = vector / math.sqrt(weight)
    return survival


def exponential_agreement_bound(n: int, ratio: float) -> float:
    """Leading-order log gap n r^4 / 2 between the pulsed product and exp(-n r^2)"""
    return 0.5 * n * ratio ** 4


def effective_exponential_survival(tau: float, tau_m: float, tau_z: float) -> float:
    """exp(-tau tau_M / tau_Z^2), valid for tau_M << tau_Z"""
    if tau_m <= 0:
        raise ConfigError('tau_M', "tau_M > 0", tau_m)
    if tau_z <= 0:
        raise ConfigError('tau_Z', "tau_Z > 0", tau_z)
    if tau_m >= tau_z:
        logger.warning(f"⚠ tau_M = {tau_m:.3g} >= tau_Z = {tau_z:.3g}: exponential form not justified")
    return math.exp(-tau * tau_m / tau_z ** 2)


def zeno_time_geometric(tau_l: float, tau_m: float) -> ZenoEstimate:
    """tau_Z = sqrt(tau_L tau_M)"""
    if tau_l <= 0:
        raise ConfigError('tau_L', "tau_L > 0", tau_l)
    if tau_m <= 0:
        raise ConfigError('tau_M', "tau_M > 0", tau_m)
    return ZenoEstimate(
        tau_z=math.sqrt(tau_l * tau_m),
        method=ZenoMethod.GEOMETRIC,
        tau_m=tau_m,
        tau_l=tau_l,
    )

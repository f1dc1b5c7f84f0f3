"""
Weak Measurement Module - Weak values, the weak decay law and the weak Zeno time

Also hosts the discretized-bath oracle that checks the exponential
amplitude used by the weak decay law.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import integrate, linalg

from .errors import ConfigError, PostSelectionError, RecurrenceHorizonError
from .qm_core import Operator2, PureState, SystemParams, propagator, x_polarized_state
from .zeno_dynamics import ZenoEstimate, ZenoMethod

logger = logging.getLogger(__name__)

# Weak-value denominators below this are treated as orthogonal selections
MIN_OVERLAP = 1e-12

# Gamma*span above this degrades the small-dissipation lifetime
SMALL_DISSIPATION = 0.5


@dataclass(frozen=True)
class PostSelection:
    """Pre-selected state at t_i, post-selected state at t_f"""

    psi_i: PureState
    psi_f: PureState
    t_i: float
    t_f: float

    def __post_init__(self):
        if not self.t_f > self.t_i:
            raise ConfigError('tf', "tf > ti", (self.t_i, self.t_f))

    @property
    def span(self) -> float:
        return self.t_f - self.t_i


@dataclass(frozen=True)
class DecayModel:
    """Amplitude decay rate Gamma of the pre-selected level"""

    gamma: float

    def __post_init__(self):
        if not math.isfinite(self.gamma) or self.gamma < 0:
            raise ConfigError('gamma', "gamma >= 0", self.gamma)


@dataclass(frozen=True)
class BathDiscretization:
    """
    Reference level coupled equally to 2N+1 equispaced bath levels

    Args:
        n_side: N, bath levels are indexed -N..N
        delta_e: Level spacing
        coupling: Per-mode coupling kappa
    """

    n_side: int
    delta_e: float
    coupling: float

    def __post_init__(self):
        if int(self.n_side) != self.n_side or self.n_side < 1:
            raise ConfigError('n_side', "integer >= 1", self.n_side)
        if not math.isfinite(self.delta_e) or self.delta_e <= 0:
            raise ConfigError('delta_e', "delta_e > 0", self.delta_e)
        if not math.isfinite(self.coupling) or self.coupling < 0:
            raise ConfigError('coupling', "coupling >= 0", self.coupling)

    @classmethod
    def for_decay_rate(cls, gamma: float, spacing_ratio: float = 20.0,
                       bandwidth_ratio: float = 50.0) -> 'BathDiscretization':
        """
        Golden-rule calibrated bath for a target amplitude decay rate

        Uses dE = gamma/spacing_ratio, N dE >= bandwidth_ratio * gamma and
        kappa = sqrt(gamma dE / pi).
        """
        if gamma <= 0:
            raise ConfigError('gamma', "gamma > 0 for a calibrated bath", gamma)
        delta_e = gamma / spacing_ratio
        n_side = int(math.ceil(bandwidth_ratio * gamma / delta_e))
        return cls(n_side=n_side, delta_e=delta_e, coupling=math.sqrt(gamma * delta_e / math.pi))

    @property
    def recurrence_time(self) -> float:
        return 2.0 * math.pi / self.delta_e

    @property
    def golden_rule_rate(self) -> float:
        """Amplitude decay rate pi kappa^2 / dE"""
        return math.pi * self.coupling ** 2 / self.delta_e


def x_polarized_selection(t_i: float, t_f: float) -> PostSelection:
    state = x_polarized_state()
    return PostSelection(psi_i=state, psi_f=state, t_i=t_i, t_f=t_f)


def weak_value(a: Operator2, sel: PostSelection, p: SystemParams, t: float) -> complex:
    """
    Time dependent weak value of A for a pre/post-selected ensemble

    Uses U^dagger(t - t_f) = U(t_f - t) for the backward-evolved post-selection.
    """
    if not sel.t_i <= t <= sel.t_f:
        raise ConfigError('t', "ti <= t <= tf", t)
    forward = sel.psi_i.evolve(propagator(p, t - sel.t_i))
    backward_op = propagator(p, sel.t_f - t)
    denominator = np.vdot(sel.psi_f.amplitudes, backward_op.entries @ forward)
    if abs(denominator) < MIN_OVERLAP:
        raise PostSelectionError(
            f"Post-selection overlap {abs(denominator):.3g} vanishes; weak value undefined"
        )
    numerator = np.vdot(sel.psi_f.amplitudes, backward_op.entries @ (a.entries @ forward))
    return complex(numerator / denominator)


def _check_window(t_i: float, t_f: float, t: float) -> None:
    if not t_f > t_i:
        raise ConfigError('tf', "tf > ti", (t_i, t_f))
    if not t_i <= t <= t_f:
        raise ConfigError('t', "ti <= t <= tf", t)


def weak_survival(d: DecayModel, t_i: float, t_f: float, t: float) -> float:
    """
    Weak decay law of a level pre- and post-selected in the same state

    Exactly 1 at t_i and 0 at t_f; Gamma = 0 returns the linear ramp limit.
    """
    _check_window(t_i, t_f, t)
    span = t_f - t_i
    if d.gamma == 0.0:
        return (t_f - t) / span
    # expm1 keeps the ratio stable as Gamma*span -> 0
    ratio = math.expm1(-d.gamma * (t_f - t)) / math.expm1(-d.gamma * span)
    return math.exp(-d.gamma * (t - t_i)) * ratio


def _small_dissipation(gamma: float, span: float) -> bool:
    """True, with a warning, when Gamma*span leaves the small-dissipation regime"""
    if gamma * span > SMALL_DISSIPATION:
        logger.warning(f"⚠ Gamma*span = {gamma * span:.3g} > {SMALL_DISSIPATION}: small-dissipation lifetime degrading")
        return True
    return False


def weak_lifetime(d: DecayModel, t_i: float, t_f: float) -> float:
    """1 / (Gamma + 2/(t_f - t_i)), a small-dissipation approximation"""
    if not t_f > t_i:
        raise ConfigError('tf', "tf > ti", (t_i, t_f))
    span = t_f - t_i
    _small_dissipation(d.gamma, span)
    return 1.0 / (d.gamma + 2.0 / span)


def weak_lifetime_quadrature(d: DecayModel, t_i: float, t_f: float) -> Tuple[float, float]:
    """
    Area under the weak decay law over the selection window

    Returns:
        Tuple of (quadrature value, closed form span*(1/x - 1/(e^x - 1)))
    """
    if not t_f > t_i:
        raise ConfigError('tf', "tf > ti", (t_i, t_f))
    span = t_f - t_i
    area, _ = integrate.quad(lambda t: weak_survival(d, t_i, t_f, t), t_i, t_f)
    x = d.gamma * span
    if x == 0.0:
        closed = 0.5 * span
    else:
        closed = span * (1.0 / x - 1.0 / math.expm1(x))
    return area, closed


def selection_span(tau_m: float, n_big: int) -> float:
    """Binds the selection window to N measurement intervals, t_f - t_i = N tau_M"""
    if tau_m <= 0:
        raise ConfigError('tau_m', "tau_M > 0", tau_m)
    if int(n_big) != n_big or n_big < 1:
        raise ConfigError('n_big', "integer >= 1", n_big)
    return n_big * tau_m


def weak_zeno_time(gamma: float, tau_m: float, n_big: int) -> ZenoEstimate:
    """tau_Z = sqrt(tau_M / (Gamma + 2/(N tau_M)))"""
    span = selection_span(tau_m, n_big)
    if gamma < 0:
        raise ConfigError('gamma', "gamma >= 0", gamma)
    tau_l = 1.0 / (gamma + 2.0 / span)
    return ZenoEstimate(
        tau_z=math.sqrt(tau_m / (gamma + 2.0 / span)),
        method=ZenoMethod.WEAK,
        tau_m=tau_m,
        tau_l=tau_l,
        regime_warning=_small_dissipation(gamma, span),
    )


def bath_spectrum(b: BathDiscretization) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigen-decomposition of the single-excitation Hamiltonian

    Returns:
        Tuple of (eigenvalues, squared overlaps of each eigenvector with the
        reference level)
    """
    levels = np.arange(-b.n_side, b.n_side + 1) * b.delta_e
    size = levels.size + 1
    hamiltonian = np.zeros((size, size))
    hamiltonian[1:, 1:] = np.diag(levels)
    hamiltonian[0, 1:] = b.coupling
    hamiltonian[1:, 0] = b.coupling
    energies, vectors = linalg.eigh(hamiltonian)
    return energies, np.abs(vectors[0, :]) ** 2


def bath_amplitude_oracle(b: BathDiscretization, t, spectrum=None):
    """
    Amplitude left on the reference level after time t

    Args:
        b: Bath discretization
        t: Scalar time or array of times, all in [0, 2 pi/dE]
        spectrum: Optional precomputed result of bath_spectrum(b)

    Returns:
        Complex amplitude U_00(t), scalar or array matching t
    """
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ConfigError('t', "t >= 0", t)
    if np.any(times > b.recurrence_time):
        raise RecurrenceHorizonError(
            f"t = {float(np.max(times)):.4g} exceeds recurrence horizon 2pi/dE = {b.recurrence_time:.4g}"
        )
    energies, weights = spectrum if spectrum is not None else bath_spectrum(b)
    amplitudes = np.exp(-1j * np.multiply.outer(times, energies)) @ weights
    if amplitudes.ndim == 0:
        return complex(amplitudes)
    return amplitudes

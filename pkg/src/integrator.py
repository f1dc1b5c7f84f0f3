"""
Integrator Module - Fixed-step classical Runge-Kutta for linear and affine generators
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import StepSizeError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegrationSettings:
    """
    Fixed step h, final time t_end, and how often frames are recorded

    Args:
        step: Time step h
        t_end: Final time; rounded to a whole number of steps
        record_stride: Record one frame every record_stride steps
    """

    step: float
    t_end: float
    record_stride: int = 1

    def __post_init__(self):
        if not math.isfinite(self.step) or self.step <= 0:
            raise StepSizeError(f"step must be > 0 (got {self.step!r})")
        if not math.isfinite(self.t_end) or self.t_end <= 0:
            raise StepSizeError(f"t_end must be > 0 (got {self.t_end!r})")
        if self.step > self.t_end:
            raise StepSizeError(f"step {self.step:g} exceeds t_end {self.t_end:g}")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise StepSizeError(f"record_stride must be an integer >= 1 (got {self.record_stride!r})")

    @staticmethod
    def default_step(omega: float, gamma: float) -> float:
        """min(0.001/Omega, 0.01/Gamma); the Gamma bound is dropped when Gamma = 0"""
        bound = 0.001 / omega
        if gamma > 0:
            bound = min(bound, 0.01 / gamma)
        return bound

    @classmethod
    def for_rates(cls, omega: float, gamma: float, t_end: float,
                  record_stride: int = 1) -> 'IntegrationSettings':
        return cls(step=cls.default_step(omega, gamma), t_end=t_end, record_stride=record_stride)

    def check_bound(self, omega: float, gamma: float) -> None:
        """Reject steps coarser than the default bound"""
        bound = self.default_step(omega, gamma)
        if self.step > bound * (1 + 1e-12):
            raise StepSizeError(f"step {self.step:g} exceeds min(0.001/Omega, 0.01/Gamma) = {bound:g}")

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.step))

    def times(self) -> np.ndarray:
        """Times of the recorded frames, starting at 0"""
        frames = self.n_steps // self.record_stride
        return np.arange(frames + 1) * (self.record_stride * self.step)


def rk4_step(rhs: Callable[[np.ndarray], np.ndarray], y: np.ndarray, dt: float) -> np.ndarray:
    """
    Advance y by one classical RK4 step of the autonomous system dy/dt = rhs(y)

    Args:
        rhs: Right hand side, evaluated on arrays shaped like y
        y: Current state
        dt: Time step

    Returns:
        State after dt
    """
    k1 = rhs(y)
    k2 = rhs(y + 0.5 * dt * k1)
    k3 = rhs(y + 0.5 * dt * k2)
    k4 = rhs(y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step_matrix(generator: np.ndarray, dt: float) -> np.ndarray:
    """
    One-step RK4 map of the linear system dy/dt = G y

    Obtained by stepping the identity, so y_{n+1} = M y_n reproduces rk4_step
    on any y exactly (up to rounding).
    """
    identity = np.eye(generator.shape[0], dtype=generator.dtype)
    return rk4_step(lambda y: generator @ y, identity, dt)


def propagate_linear(generator: np.ndarray, y0: np.ndarray, settings: IntegrationSettings,
                     frame_check: Optional[Callable[[float, np.ndarray], None]] = None) -> np.ndarray:
    """
    Fixed-step RK4 solution of dy/dt = G y, recorded every record_stride steps

    Args:
        generator: Constant generator G
        y0: Initial state vector
        settings: Step, final time and stride
        frame_check: Optional callback run on every recorded frame

    Returns:
        Array of recorded states, first row y0
    """
    step_map = rk4_step_matrix(generator, settings.step)
    frame_map = np.linalg.matrix_power(step_map, settings.record_stride)
    times = settings.times()
    frames = np.empty((times.size, y0.size), dtype=np.result_type(generator, y0))
    frames[0] = y0
    for i in range(1, times.size):
        frames[i] = frame_map @ frames[i - 1]
        if frame_check is not None:
            frame_check(times[i], frames[i])
    logger.debug(f"Propagated {settings.n_steps} RK4 steps ({times.size} frames)")
    return frames


def affine_generator(rhs: Callable[[np.ndarray], np.ndarray], size: int) -> np.ndarray:
    """
    Augmented generator of an affine right hand side

    rhs(y) = A y + c is embedded as d/dt [y, 1] = [[A, c], [0, 0]] [y, 1]. A
    purely linear rhs gives c = 0.
    """
    offset = rhs(np.zeros(size, dtype=complex))
    augmented = np.zeros((size + 1, size + 1), dtype=complex)
    for j in range(size):
        unit = np.zeros(size, dtype=complex)
        unit[j] = 1.0
        augmented[:size, j] = rhs(unit) - offset
    augmented[:size, size] = offset
    return augmented

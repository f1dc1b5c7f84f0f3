"""
Fitting Module - Extraction of a relaxation rate from a sampled <sigma_z>(t) series
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .errors import FitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecayFit:
    """Result of a relaxation-rate fit"""

    rate: float
    asymptote: float
    amplitude: float
    log_linear_rate: float
    window_points: int
    monotone: bool


class DecayRateFitter:
    """
    Fits s(t) = s_inf + A exp(-rate t) to a relaxing series

    The asymptote is first taken from the tail of the series and a
    log-linear slope is regressed over the window where the residual is
    still resolvable. That estimate seeds a three-parameter nonlinear
    least-squares refinement, which removes the bias an incompletely
    relaxed tail leaves in the asymptote.
    """

    TAIL_FRACTION = 0.10  # Final share of the series averaged for s_inf
    RESIDUAL_FLOOR = 1e-6  # Residuals below this are not fitted in log space
    MIN_SPAN_RATES = 3.0  # Series must cover at least 3/rate
    MIN_WINDOW_POINTS = 3

    def fit(self, times: np.ndarray, values: np.ndarray) -> DecayFit:
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        if times.shape != values.shape or times.ndim != 1:
            raise FitError("times and values must be 1-D arrays of equal length")
        if times.size < 2 * self.MIN_WINDOW_POINTS:
            raise FitError(f"need at least {2 * self.MIN_WINDOW_POINTS} samples (got {times.size})")
        if not np.all(np.diff(times) > 0):
            raise FitError("times must be strictly increasing")

        tail = max(1, int(math.ceil(self.TAIL_FRACTION * values.size)))
        asymptote = float(np.mean(values[-tail:]))
        residual = values - asymptote

        # Leading run of resolvable residuals
        resolvable = np.abs(residual) > self.RESIDUAL_FLOOR
        window = np.argmin(resolvable) if not resolvable.all() else resolvable.size
        if window < self.MIN_WINDOW_POINTS:
            raise FitError("series shows no resolvable decay")

        t_win = times[:window]
        r_win = residual[:window]
        monotone = bool(np.all(np.sign(r_win) == np.sign(r_win[0]))
                        and np.all(np.diff(np.abs(r_win)) <= 0))
        if not monotone:
            logger.warning("⚠ Residual is not monotone over the fit window")

        slope, _ = np.polyfit(t_win - times[0], np.log(np.abs(r_win)), 1)
        log_linear_rate = -float(slope)
        if log_linear_rate <= 0:
            raise FitError(f"log-linear slope {slope:.3g} does not describe a decay")

        rate, asymptote, amplitude = self._refine(times, values, residual[0], log_linear_rate, asymptote)

        span = times[-1] - times[0]
        if span * rate < self.MIN_SPAN_RATES:
            raise FitError(
                f"series spans {span * rate:.2f}/rate, need at least {self.MIN_SPAN_RATES:g}/rate"
            )

        logger.debug(f"✓ Fitted rate {rate:.6g} (log-linear seed {log_linear_rate:.6g}, window {window})")
        return DecayFit(
            rate=rate,
            asymptote=asymptote,
            amplitude=amplitude,
            log_linear_rate=log_linear_rate,
            window_points=int(window),
            monotone=monotone,
        )

    def _refine(self, times, values, amplitude0, rate0, asymptote0):
        t0 = times[0]

        def model(t, amplitude, rate, asymptote):
            return asymptote + amplitude * np.exp(-rate * (t - t0))

        try:
            (amplitude, rate, asymptote), _ = curve_fit(
                model, times, values, p0=(amplitude0, rate0, asymptote0), maxfev=10000
            )
        except (RuntimeError, ValueError) as e:
            logger.warning(f"⚠ Nonlinear refinement failed ({e}); keeping log-linear estimate")
            return rate0, asymptote0, amplitude0
        if not np.isfinite(rate) or rate <= 0:
            logger.warning("⚠ Nonlinear refinement left the decaying branch; keeping log-linear estimate")
            return rate0, asymptote0, amplitude0
        return float(rate), float(asymptote), float(amplitude)


def fit_decay_rate(times: np.ndarray, values: np.ndarray) -> float:
    """
    Relaxation rate of a sampled series

    Args:
        times: Strictly increasing sample times
        values: Series values, e.g. <sigma_z>(t)

    Returns:
        Fitted rate
    """
    return DecayRateFitter().fit(times, values).rate

"""
Thermal Field Module - Two-level atom in a thermal magnetic field

Master equation, Bloch equations, the temperature-dependent relaxation
rate and the resulting Zeno time. Interaction picture, natural units.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, PositivityError
from .integrator import IntegrationSettings, affine_generator, propagate_linear
from .qm_core import DensityMatrix, Operator2, pauli
from .weak_measurement import weak_zeno_time
from .zeno_dynamics import ZenoEstimate, ZenoMethod

logger = logging.getLogger(__name__)

# Above this Omega/T the occupation underflows to exactly zero
MAX_BOLTZMANN_EXPONENT = 700.0

# Tolerances applied to integrated frames
FRAME_TOL = 1e-9
FRAME_EIGEN_FLOOR = -1e-8

SIGMA_PLUS = pauli('plus')
SIGMA_MINUS = pauli('minus')
SIGMA_Z = pauli('z')


class ThermalFactorMode(str, Enum):
    """
    How the thermal enhancement of the relaxation rate is evaluated

    DERIVED_COTH uses 2N(Omega)+1 = coth(Omega/2T). PAPER_LITERAL squares the
    hyperbolic cotangent, as the closed-form rate is usually printed. Both
    equal 1 at T = 0.
    """
    PAPER_LITERAL = 'paper'
    DERIVED_COTH = 'derived'

    @classmethod
    def parse(cls, value: str) -> 'ThermalFactorMode':
        aliases = {'paper': cls.PAPER_LITERAL, 'paper_literal': cls.PAPER_LITERAL,
                   'derived': cls.DERIVED_COTH, 'derived_coth': cls.DERIVED_COTH}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise ConfigError('mode', "one of paper, derived", value) from None


@dataclass(frozen=True)
class ThermalFieldParams:
    """Coupling g, Rabi frequency Omega and field temperature T"""

    g: float
    omega: float
    temperature: float
    mode: ThermalFactorMode = ThermalFactorMode.DERIVED_COTH

    def __post_init__(self):
        if not math.isfinite(self.g) or self.g < 0:
            raise ConfigError('g', "g >= 0", self.g)
        if not math.isfinite(self.omega) or self.omega <= 0:
            raise ConfigError('omega', "omega > 0", self.omega)
        if not math.isfinite(self.temperature) or self.temperature < 0:
            raise ConfigError('temperature', "temperature >= 0", self.temperature)
        if not isinstance(self.mode, ThermalFactorMode):
            object.__setattr__(self, 'mode', ThermalFactorMode.parse(self.mode))

    @classmethod
    def at_occupation(cls, g: float, omega: float, occupation: float,
                      mode: ThermalFactorMode = ThermalFactorMode.DERIVED_COTH) -> 'ThermalFieldParams':
        """Choose T so that N(Omega) equals the requested occupation"""
        if occupation < 0:
            raise ConfigError('occupation', "N >= 0", occupation)
        if occupation == 0:
            return cls(g=g, omega=omega, temperature=0.0, mode=mode)
        return cls(g=g, omega=omega, temperature=omega / math.log1p(1.0 / occupation), mode=mode)

    @property
    def occupation(self) -> float:
        return planck_occupation(self.omega, self.temperature)

    @property
    def base_rate(self) -> float:
        """2 g^2 Omega, the prefactor of both dissipators"""
        return 2.0 * self.g ** 2 * self.omega


@dataclass(frozen=True)
class DriveParams:
    """Complex coherent drive amplitude Lambda"""

    amplitude: complex = 0j

    def __post_init__(self):
        value = complex(self.amplitude)
        if not (math.isfinite(value.real) and math.isfinite(value.imag)):
            raise ConfigError('lambda', "finite complex amplitude", self.amplitude)
        object.__setattr__(self, 'amplitude', value)


NO_DRIVE = DriveParams()


@dataclass(frozen=True)
class BlochVector:
    """Expectations <sigma_+>, <sigma_->, <sigma_z>"""

    sp: complex
    sm: complex
    sz: float

    def as_array(self) -> np.ndarray:
        return np.array([self.sp, self.sm, self.sz], dtype=complex)

    @classmethod
    def from_array(cls, values: np.ndarray) -> 'BlochVector':
        return cls(sp=complex(values[0]), sm=complex(values[1]), sz=float(np.real(values[2])))


def planck_occupation(omega: float, temperature: float) -> float:
    """Mean thermal occupation 1/(e^{Omega/T} - 1); zero at T = 0"""
    if omega <= 0:
        raise ConfigError('omega', "omega > 0", omega)
    if temperature < 0:
        raise ConfigError('temperature', "temperature >= 0", temperature)
    if temperature == 0:
        return 0.0
    exponent = omega / temperature
    if exponent > MAX_BOLTZMANN_EXPONENT:
        return 0.0
    return 1.0 / math.expm1(exponent)


def thermal_factor(p: ThermalFieldParams) -> float:
    """coth(Omega/2T) = 2N+1 in derived mode, its square in paper mode"""
    coth = 2.0 * planck_occupation(p.omega, p.temperature) + 1.0
    if p.mode is ThermalFactorMode.PAPER_LITERAL:
        return coth ** 2
    return coth


def gamma_thermal(p: ThermalFieldParams) -> float:
    """Population relaxation rate 4 g^2 Omega * thermal factor"""
    return 4.0 * p.g ** 2 * p.omega * thermal_factor(p)


def steady_state_sigma_z(p: ThermalFieldParams) -> float:
    return -1.0 / (2.0 * planck_occupation(p.omega, p.temperature) + 1.0)


def _dissipator(jump: np.ndarray, rho: np.ndarray) -> np.ndarray:
    """2 L rho L^dagger - {L^dagger L, rho}"""
    jump_dag = jump.conj().T
    number = jump_dag @ jump
    return 2.0 * jump @ rho @ jump_dag - number @ rho - rho @ number


def _lindblad_array(rho: np.ndarray, p: ThermalFieldParams, d: DriveParams) -> np.ndarray:
    occupation = planck_occupation(p.omega, p.temperature)
    drive = d.amplitude * SIGMA_PLUS.entries + d.amplitude.conjugate() * SIGMA_MINUS.entries
    return (
        p.base_rate * (occupation + 1.0) * _dissipator(SIGMA_MINUS.entries, rho)
        + p.base_rate * occupation * _dissipator(SIGMA_PLUS.entries, rho)
        - 1j * p.g * (drive @ rho - rho @ drive)
    )


def lindblad_rhs(rho: DensityMatrix, p: ThermalFieldParams, d: DriveParams = NO_DRIVE) -> Operator2:
    """
    Time derivative of the reduced density matrix

    Emission at 2g^2 Omega (N+1), absorption at 2g^2 Omega N, and the
    coherent drive -i g [Lambda sigma_+ + Lambda* sigma_-, rho].
    """
    return Operator2(_lindblad_array(rho.matrix.entries, p, d))


def lindblad_superoperator(p: ThermalFieldParams, d: DriveParams = NO_DRIVE) -> np.ndarray:
    """4x4 generator acting on row-major vec(rho)"""
    generator = np.zeros((4, 4), dtype=complex)
    for k in range(4):
        unit = np.zeros(4, dtype=complex)
        unit[k] = 1.0
        generator[:, k] = _lindblad_array(unit.reshape(2, 2), p, d).reshape(4)
    return generator


def bloch_rhs(b: BlochVector, p: ThermalFieldParams, d: DriveParams = NO_DRIVE) -> BlochVector:
    """
    Bloch-equation derivative

    Coherences damp at 2g^2 Omega (2N+1), the population relaxes at twice
    that rate toward -1/(2N+1), and the drive couples them.
    """
    return BlochVector.from_array(_bloch_array(b.as_array(), p, d))


def _bloch_array(y: np.ndarray, p: ThermalFieldParams, d: DriveParams) -> np.ndarray:
    sp, sm, sz = y
    coth = 2.0 * planck_occupation(p.omega, p.temperature) + 1.0
    coherence_rate = p.base_rate * coth
    lam = d.amplitude
    return np.array([
        -coherence_rate * sp - 1j * p.g * lam.conjugate() * sz,
        -coherence_rate * sm + 1j * p.g * lam * sz,
        -2.0 * coherence_rate * sz - 2.0 * p.base_rate - 2j * p.g * (lam * sp - lam.conjugate() * sm),
    ], dtype=complex)


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    return BlochVector(
        sp=rho.expectation(SIGMA_PLUS),
        sm=rho.expectation(SIGMA_MINUS),
        sz=rho.expectation(SIGMA_Z).real,
    )


def density_from_bloch(b: BlochVector) -> DensityMatrix:
    """rho = [[1+sz, 2 sm], [2 sp, 1-sz]] / 2"""
    return DensityMatrix(Operator2([[0.5 * (1 + b.sz), b.sm], [b.sp, 0.5 * (1 - b.sz)]]))


def _check_frame(t: float, vec: np.ndarray) -> None:
    rho = vec.reshape(2, 2)
    hermitian_defect = float(np.max(np.abs(rho - rho.conj().T)))
    trace_defect = abs(np.trace(rho) - 1.0)
    smallest = float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0])
    if hermitian_defect > FRAME_TOL or trace_defect > FRAME_TOL or smallest < FRAME_EIGEN_FLOOR:
        raise PositivityError(
            f"Frame at t = {t:.6g} left the physical set (Hermiticity {hermitian_defect:.2g}, "
            f"trace {trace_defect:.2g}, min eigenvalue {smallest:.2g})"
        )


def integrate_master_equation(rho0: DensityMatrix, p: ThermalFieldParams, d: DriveParams,
                              s: IntegrationSettings) -> Tuple[np.ndarray, List[DensityMatrix]]:
    """
    Fixed-step RK4 solution of the master equation

    Returns:
        Tuple of (frame times, density matrix per frame)
    """
    s.check_bound(p.omega, gamma_thermal(replace(p, mode=ThermalFactorMode.DERIVED_COTH)))
    generator = lindblad_superoperator(p, d)
    frames = propagate_linear(generator, rho0.matrix.entries.reshape(4), s, frame_check=_check_frame)
    series = [DensityMatrix(Operator2(vec.reshape(2, 2)), tol=FRAME_TOL, eigen_floor=FRAME_EIGEN_FLOOR)
              for vec in frames]
    return s.times(), series


def integrate_bloch_equations(b0: BlochVector, p: ThermalFieldParams, d: DriveParams,
                              s: IntegrationSettings) -> Tuple[np.ndarray, List[BlochVector]]:
    """
    Fixed-step RK4 solution of the Bloch equations, same stepping as the master equation

    Returns:
        Tuple of (frame times, Bloch vector per frame)
    """
    s.check_bound(p.omega, gamma_thermal(replace(p, mode=ThermalFactorMode.DERIVED_COTH)))
    generator = affine_generator(lambda y: _bloch_array(y, p, d), 3)
    frames = propagate_linear(generator, np.append(b0.as_array(), 1.0), s)
    return s.times(), [BlochVector.from_array(row[:3]) for row in frames]


def analytic_sigma_z(p: ThermalFieldParams, t, sz0: float):
    """
    Undriven <sigma_z>(t) relaxing toward -1/(2N+1) at 4 g^2 Omega (2N+1)

    The rate is always the derived-mode one: it is what the Bloch equations
    produce, whatever mode p carries.
    """
    rate = gamma_thermal(replace(p, mode=ThermalFactorMode.DERIVED_COTH))
    sz_inf = steady_state_sigma_z(p)
    return sz_inf + (sz0 - sz_inf) * np.exp(-rate * np.asarray(t, dtype=float))


def measurement_time_from_frequency(omega: float) -> float:
    """Measurement interval bound to one period of the resonant field, tau_M = 1/Omega"""
    if omega <= 0:
        raise ConfigError('omega', "omega > 0", omega)
    return 1.0 / omega


def zeno_time_thermal(p: ThermalFieldParams, n_big: int) -> ZenoEstimate:
    """
    Zeno time of the atom in the thermal field

    The weak Zeno time evaluated at Gamma = gamma_thermal(p) and
    tau_M = 1/Omega, i.e. sqrt(N/2)/Omega [1 + 2 g^2 N * factor]^(-1/2).
    """
    estimate = weak_zeno_time(gamma_thermal(p), measurement_time_from_frequency(p.omega), n_big)
    return replace(estimate, method=ZenoMethod.THERMAL)


def zeno_time_zero_temperature(g: float, omega: float, n_big: int) -> ZenoEstimate:
    """Closed form at T = 0: sqrt(N/2)/Omega (1 + 2 g^2 N)^(-1/2)"""
    if n_big < 1:
        raise ConfigError('n_big', "integer >= 1", n_big)
    tau_z = math.sqrt(n_big / 2.0) / omega / math.sqrt(1.0 + 2.0 * g ** 2 * n_big)
    return ZenoEstimate(tau_z=tau_z, method=ZenoMethod.THERMAL, tau_m=1.0 / omega)


def zeno_time_continuous_limit(g: float, omega: float) -> ZenoEstimate:
    """Supremum over N at T = 0: 1/(2 Omega g)"""
    if g <= 0:
        raise ConfigError('g', "g > 0 for a finite limit", g)
    return ZenoEstimate(tau_z=1.0 / (2.0 * omega * g), method=ZenoMethod.THERMAL)


class TemperatureSweep:
    """
    Zeno time across a temperature grid

    Grid points are independent; with workers > 1 they are evaluated on a
    thread pool whose map keeps grid order, so the rows match a serial run.
    """

    def __init__(self, template: ThermalFieldParams, n_big: int, workers: int = 1):
        if workers < 1:
            raise ConfigError('workers', "workers >= 1", workers)
        self.template = template
        self.n_big = n_big
        self.workers = workers

    def _point(self, temperature: float) -> Tuple[float, float]:
        params = replace(self.template, temperature=float(temperature))
        return temperature / params.omega, zeno_time_thermal(params, self.n_big).tau_z

    def run(self, temperatures: Sequence[float]) -> List[Tuple[float, float]]:
        grid = [float(t) for t in temperatures]
        if not grid:
            raise ConfigError('grid', "at least one temperature")
        if grid[0] < 0:
            raise ConfigError('grid_start', "temperature >= 0", grid[0])
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigError('grid', "strictly increasing temperatures")

        if self.workers == 1:
            rows = [self._point(t) for t in grid]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                rows = list(pool.map(self._point, grid))

        if self.template.g > 0 and any(b[1] >= a[1] for a, b in zip(rows, rows[1:])):
            logger.warning("⚠ Zeno time is not strictly decreasing along the temperature grid")
        return rows


def temperature_sweep(template: ThermalFieldParams, n_big: int, temperatures: Sequence[float],
                      workers: Optional[int] = None) -> List[Tuple[float, float]]:
    """Rows of (T/Omega, tau_Z) in grid order"""
    return TemperatureSweep(template, n_big, workers or 1).run(temperatures)

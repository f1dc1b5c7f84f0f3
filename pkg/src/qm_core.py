"""
QM Core Module - Exact 2x2 quantum mechanics for a two-level atom

Natural units throughout (hbar = k_B = 1). Basis index 0 is the excited
level (sigma_z = +1), index 1 the ground level.
"""
import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import ConfigError

logger = logging.getLogger(__name__)

# Absolute tolerance on the max-norm of a matrix defect
MATRIX_TOL = 1e-12

ArrayLike = Union[np.ndarray, list, tuple]


def _frozen(values: ArrayLike, shape: tuple) -> np.ndarray:
    """Copy into a read-only complex array of the given shape"""
    array = np.array(values, dtype=complex)
    if array.shape != shape:
        raise ConfigError('shape', f"shape {shape}", array.shape)
    if not np.all(np.isfinite(array)):
        raise ConfigError('entries', "all entries finite", array)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Operator2:
    """An immutable 2x2 complex matrix"""

    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'entries', _frozen(self.entries, (2, 2)))

    @classmethod
    def identity(cls) -> 'Operator2':
        return cls(np.eye(2))

    @classmethod
    def zero(cls) -> 'Operator2':
        return cls(np.zeros((2, 2)))

    def dagger(self) -> 'Operator2':
        return Operator2(self.entries.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.entries))

    def __matmul__(self, other: 'Operator2') -> 'Operator2':
        return Operator2(self.entries @ other.entries)

    def __add__(self, other: 'Operator2') -> 'Operator2':
        return Operator2(self.entries + other.entries)

    def __sub__(self, other: 'Operator2') -> 'Operator2':
        return Operator2(self.entries - other.entries)

    def __mul__(self, scalar: complex) -> 'Operator2':
        return Operator2(scalar * self.entries)

    __rmul__ = __mul__

    def defect(self, other: 'Operator2') -> float:
        """Max-norm of the entrywise difference"""
        return float(np.max(np.abs(self.entries - other.entries)))

    def is_close(self, other: 'Operator2', tol: float = MATRIX_TOL) -> bool:
        return self.defect(other) <= tol

    def is_hermitian(self, tol: float = MATRIX_TOL) -> bool:
        return self.is_close(self.dagger(), tol)

    def is_unitary(self, tol: float = MATRIX_TOL) -> bool:
        return (self.dagger() @ self).is_close(Operator2.identity(), tol)

    def is_projector(self, tol: float = MATRIX_TOL) -> bool:
        return self.is_hermitian(tol) and (self @ self).is_close(self, tol)


@dataclass(frozen=True, eq=False)
class PureState:
    """A normalized 2-component state vector"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = _frozen(self.amplitudes, (2,))
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > MATRIX_TOL:
            raise ConfigError('amplitudes', "norm = 1 within 1e-12", norm)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def normalized(cls, values: ArrayLike) -> 'PureState':
        """Build a state from an unnormalized vector"""
        vector = np.array(values, dtype=complex)
        norm = np.linalg.norm(vector)
        if norm == 0:
            raise ConfigError('amplitudes', "non-zero vector")
        return cls(vector / norm)

    def inner(self, other: 'PureState') -> complex:
        """<self|other>"""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def evolve(self, op: Operator2) -> np.ndarray:
        """Apply an operator; the result is a bare vector (unitarity not assumed)"""
        return op.entries @ self.amplitudes


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A Hermitian, trace-one, positive 2x2 matrix"""

    matrix: Operator2
    tol: float = MATRIX_TOL
    eigen_floor: float = -1e-10

    def __post_init__(self):
        if not isinstance(self.matrix, Operator2):
            object.__setattr__(self, 'matrix', Operator2(self.matrix))
        self.validate()

    def validate(self) -> None:
        if not self.matrix.is_hermitian(self.tol):
            raise ConfigError('rho', f"Hermitian within {self.tol:g}")
        trace = self.matrix.trace()
        if abs(trace - 1.0) > self.tol:
            raise ConfigError('rho', f"trace = 1 within {self.tol:g}", trace)
        smallest = float(self.eigenvalues()[0])
        if smallest < self.eigen_floor:
            raise ConfigError('rho', f"eigenvalues >= {self.eigen_floor:g}", smallest)

    def eigenvalues(self) -> np.ndarray:
        hermitian_part = 0.5 * (self.matrix.entries + self.matrix.entries.conj().T)
        return np.linalg.eigvalsh(hermitian_part)

    def expectation(self, op: Operator2) -> complex:
        return complex(np.trace(op.entries @ self.matrix.entries))


@dataclass(frozen=True)
class SystemParams:
    """Rabi frequency of the atom in the barrier field"""

    omega: float

    def __post_init__(self):
        if not np.isfinite(self.omega) or self.omega <= 0:
            raise ConfigError('omega', "omega > 0", self.omega)


_PAULI = {
    'x': [[0, 1], [1, 0]],
    'y': [[0, -1j], [1j, 0]],
    'z': [[1, 0], [0, -1]],
    'plus': [[0, 1], [0, 0]],
    'minus': [[0, 0], [1, 0]],
}


def pauli(axis: str) -> Operator2:
    """
    Pauli matrix or ladder operator

    Args:
        axis: One of 'x', 'y', 'z', 'plus', 'minus'

    Returns:
        The operator; sigma_plus/minus = (sigma_x +/- i sigma_y)/2
    """
    try:
        return Operator2(_PAULI[axis])
    except KeyError:
        raise ConfigError('axis', f"one of {sorted(_PAULI)}", axis) from None


def system_hamiltonian(p: SystemParams) -> Operator2:
    """H_s = (Omega/2) sigma_z"""
    return 0.5 * p.omega * pauli('z')


def propagator(p: SystemParams, t: float) -> Operator2:
    """
    Free evolution operator of the atom, diag(e^{i Omega t/2}, e^{-i Omega t/2})

    Phases follow the barrier-field convention, so U(t)^dagger = U(-t) and
    U(t1) U(t2) = U(t1 + t2).
    """
    if not np.isfinite(t):
        raise ConfigError('t', "finite time", t)
    phase = 0.5 * p.omega * t
    return Operator2(np.diag([np.exp(1j * phase), np.exp(-1j * phase)]))


def x_polarized_state() -> PureState:
    return PureState(np.array([1.0, 1.0]) / np.sqrt(2.0))


def basis_state(index: int) -> PureState:
    """|e> for index 0, |g> for index 1"""
    if index not in (0, 1):
        raise ConfigError('index', "0 (excited) or 1 (ground)", index)
    vector = np.zeros(2)
    vector[index] = 1.0
    return PureState(vector)


def projector_onto(s: PureState) -> Operator2:
    """Rank-one projector |s><s| (prefactor 1/2 for the x-polarized state)"""
    return Operator2(np.outer(s.amplitudes, s.amplitudes.conj()))


def density_from_state(s: PureState) -> DensityMatrix:
    return DensityMatrix(projector_onto(s))


def expectation(a: Operator2, s: PureState) -> complex:
    """<s|A|s>"""
    return complex(np.vdot(s.amplitudes, a.entries @ s.amplitudes))

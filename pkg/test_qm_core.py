"""
Tests for the 2x2 quantum-mechanics core
"""
import math

import numpy as np
import pytest

from src.errors import ConfigError
from src.qm_core import (
    DensityMatrix,
    Operator2,
    PureState,
    SystemParams,
    basis_state,
    density_from_state,
    expectation,
    pauli,
    projector_onto,
    propagator,
    system_hamiltonian,
    x_polarized_state,
)

TOL = 1e-12


def test_pauli_z_is_diagonal():
    np.testing.assert_array_equal(pauli('z').entries, np.diag([1, -1]))


def test_ladder_product_projects_on_excited_level():
    product = pauli('plus') @ pauli('minus')
    np.testing.assert_allclose(product.entries, np.diag([1, 0]), atol=TOL)


@pytest.mark.parametrize('axis', ['x', 'y', 'z'])
def test_pauli_is_involution(axis):
    assert (pauli(axis) @ pauli(axis)).is_close(Operator2.identity())


def test_ladder_operators_from_pauli_xy():
    plus = 0.5 * (pauli('x') + 1j * pauli('y'))
    minus = 0.5 * (pauli('x') - 1j * pauli('y'))
    assert plus.is_close(pauli('plus'))
    assert minus.is_close(pauli('minus'))


def test_unknown_axis_rejected():
    with pytest.raises(ConfigError) as excinfo:
        pauli('w')
    assert excinfo.value.key == 'axis'


@pytest.mark.parametrize('omega, expected', [(1.0, [0.5, -0.5]), (2.0, [1.0, -1.0])])
def test_system_hamiltonian(omega, expected):
    h = system_hamiltonian(SystemParams(omega))
    np.testing.assert_allclose(h.entries, np.diag(expected), atol=TOL)
    assert h.is_hermitian()


def test_system_params_require_positive_omega():
    with pytest.raises(ConfigError):
        SystemParams(0.0)


def test_propagator_at_zero_is_identity():
    assert propagator(SystemParams(1.0), 0.0).is_close(Operator2.identity())


def test_propagator_full_period_is_minus_identity():
    u = propagator(SystemParams(1.0), 2 * math.pi)
    assert u.is_close(-1.0 * Operator2.identity())


@pytest.mark.parametrize('t', [0.3, 1.7, -2.5, 40.0])
def test_propagator_unitary_and_inverse(t):
    p = SystemParams(1.3)
    u = propagator(p, t)
    assert u.is_unitary()
    assert (u @ propagator(p, -t)).is_close(Operator2.identity())
    assert u.dagger().is_close(propagator(p, -t))


def test_propagator_group_property():
    p = SystemParams(0.7)
    assert (propagator(p, 1.1) @ propagator(p, 2.4)).is_close(propagator(p, 3.5))


def test_x_polarized_state_expectations():
    psi = x_polarized_state()
    assert np.linalg.norm(psi.amplitudes) == pytest.approx(1.0, abs=TOL)
    assert expectation(pauli('x'), psi) == pytest.approx(1.0, abs=TOL)
    assert expectation(pauli('z'), psi) == pytest.approx(0.0, abs=TOL)


def test_pure_state_rejects_unnormalized_vector():
    with pytest.raises(ConfigError):
        PureState([1.0, 1.0])
    assert PureState.normalized([3.0, 4.0]).amplitudes[1] == pytest.approx(0.8)


def test_projector_onto_x_polarized_state():
    projector = projector_onto(x_polarized_state())
    np.testing.assert_allclose(projector.entries, 0.5 * np.ones((2, 2)), atol=TOL)
    assert projector.is_projector()
    assert projector.trace() == pytest.approx(1.0, abs=TOL)


def test_projector_onto_basis_state():
    np.testing.assert_allclose(projector_onto(basis_state(0)).entries, np.diag([1, 0]), atol=TOL)


@pytest.mark.parametrize('vector', [[1, 1j], [0.3, -0.2 + 0.5j], [2, 0]])
def test_projector_idempotent_for_any_state(vector):
    projector = projector_onto(PureState.normalized(vector))
    assert (projector @ projector - projector).is_close(Operator2.zero())
    assert projector.trace() == pytest.approx(1.0, abs=TOL)


def test_expectation_of_hamiltonian_on_eigenstates():
    h = system_hamiltonian(SystemParams(1.0))
    assert expectation(h, basis_state(0)) == 0.5
    assert expectation(h, basis_state(1)) == -0.5


def test_expectation_of_hermitian_operator_is_real():
    psi = PureState.normalized([0.4 + 0.1j, -0.7j])
    for axis in ('x', 'y', 'z'):
        assert abs(expectation(pauli(axis), psi).imag) < TOL
    assert expectation(Operator2.identity(), psi) == pytest.approx(1.0, abs=TOL)


def test_density_matrix_invariants():
    rho = density_from_state(x_polarized_state())
    assert rho.expectation(pauli('x')) == pytest.approx(1.0, abs=TOL)
    with pytest.raises(ConfigError):
        DensityMatrix(Operator2(np.diag([1.5, -0.5])))
    with pytest.raises(ConfigError):
        DensityMatrix(Operator2([[0.5, 0.2], [0.1, 0.5]]))


def test_operator_is_immutable():
    op = pauli('x')
    with pytest.raises(ValueError):
        op.entries[0, 0] = 5

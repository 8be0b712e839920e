# tests/unit/semantics/test_evaluator.py

import math

import numpy as np
import pytest

from app.circuits.circuit import Circuit
from app.circuits.gates import Theory, cx, discard, free, h, init, neg, p, phase, rx, swap, x
from app.circuits.sampling import random_circuit
from app.config import AppConfig
from app.errors import DimensionCap, UnsupportedTheory
from app.semantics.evaluator import (
    embed_in_ground, eval_cptp, eval_unitary, evaluate, phase_matrix, rx_matrix, unitary_superoperator,
)

_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)


@pytest.fixture
def rng():
    """Seeded generator for random circuits."""
    return np.random.default_rng(11)


@pytest.mark.parametrize("gates, n, expected", [
    ((h(0),), 1, _H),
    ((p(0.3, 0),), 1, np.diag([1, np.exp(0.3j)])),
    ((rx(math.pi, 0),), 1, np.array([[0, -1j], [-1j, 0]])),
    ((phase(0.5),), 0, np.array([[np.exp(0.5j)]])),
    ((cx(0, 1),), 2, np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])),
    ((cx(1, 0),), 2, np.array([[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]])),
    ((h(0), h(1)), 2, np.kron(_H, _H)),
    ((x(1, neg(0)),), 2, np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])),
])
def test_eval_unitary_uses_big_endian_wires(gates, n, expected):
    """Wire 0 is the most significant bit of the basis index."""
    # 2. Act
    u = eval_unitary(Circuit(Theory.QC, n, gates))

    # 3. Assert
    assert np.allclose(u, expected, atol=1e-15)


def test_rx_is_exp_of_x():
    # 1. Arrange
    theta = 1.1
    pauli_x = np.array([[0, 1], [1, 0]])

    # 2. Act & 3. Assert
    expected = math.cos(theta / 2) * np.eye(2) - 1j * math.sin(theta / 2) * pauli_x
    assert np.allclose(rx_matrix(theta), expected)
    assert np.allclose(phase_matrix(math.pi), np.diag([1, -1]))


def test_init_inserts_zero_at_its_position():
    # 1. Arrange
    top = Circuit(Theory.QCISO, 1, (init(0),))
    bottom = Circuit(Theory.QCISO, 1, (init(1),))

    # 2. Act & 3. Assert
    assert np.allclose(eval_unitary(top), np.array([[1, 0], [0, 1], [0, 0], [0, 0]]))
    assert np.allclose(eval_unitary(bottom), np.array([[1, 0], [0, 0], [0, 1], [0, 0]]))


def test_free_projects_on_zero():
    """FREE is ⟨0| on its wire; a borrowed ancilla returned clean gives the identity."""
    # 1. Arrange
    clean = Circuit(Theory.QCANCILLA, 1, (init(1), cx(0, 1), cx(0, 1), free(1)))
    projector = Circuit(Theory.QCANCILLA, 1, (free(0),))

    # 2. Act & 3. Assert
    assert np.allclose(eval_unitary(clean), np.eye(2))
    assert np.allclose(eval_unitary(projector), np.array([[1, 0]]))


def test_unitary_evaluation_respects_the_dimension_cap(mocker):
    # 1. Arrange
    mocker.patch.object(AppConfig, "MAX_QUBITS", 2)
    c = Circuit(Theory.QCISO, 2, (init(2),))

    # 2. Act & 3. Assert
    with pytest.raises(DimensionCap, match="3 qubits"):
        eval_unitary(c)


def test_ground_circuits_need_the_cptp_evaluator():
    with pytest.raises(UnsupportedTheory):
        eval_unitary(Circuit(Theory.QCGROUND, 1, (discard(0),)))
    with pytest.raises(UnsupportedTheory):
        eval_cptp(Circuit(Theory.QC, 1, (h(0),)))


def test_cptp_of_a_unitary_circuit_is_its_conjugation(rng):
    # 1. Arrange
    c = random_circuit(rng, 2, 10)
    u = eval_unitary(c)

    # 2. Act
    s = eval_cptp(embed_in_ground(c))

    # 3. Assert
    assert np.allclose(s, unitary_superoperator(u), atol=1e-12)


def test_discard_is_the_partial_trace():
    # 1. Arrange
    c = Circuit(Theory.QCGROUND, 2, (discard(1),))
    rho = np.kron(np.array([[0.25, 0.1], [0.1, 0.75]]), np.array([[0.5, 0.5], [0.5, 0.5]]))

    # 2. Act
    out = (eval_cptp(c) @ rho.reshape(-1)).reshape(2, 2)

    # 3. Assert
    assert np.allclose(out, np.array([[0.25, 0.1], [0.1, 0.75]]))


def test_embed_in_ground_drops_phases_and_turns_free_into_discard():
    # 1. Arrange
    c = Circuit(Theory.QCANCILLA, 1, (phase(0.4), init(1), swap(0, 1), free(1)))

    # 2. Act
    ground = embed_in_ground(c)

    # 3. Assert
    assert ground.theory is Theory.QCGROUND
    assert ground.gates == (init(1), swap(0, 1), discard(1))


@pytest.mark.parametrize("theory, gates, kind", [
    (Theory.QC, (h(0),), "unitary"),
    (Theory.QCISO, (init(1),), "isometry"),
    (Theory.QCGROUND, (discard(0),), "cptp"),
])
def test_evaluate_picks_the_native_semantics(theory, gates, kind):
    assert evaluate(Circuit(theory, 1, gates))[0] == kind

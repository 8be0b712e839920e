# tests/unit/circuits/test_shortcuts_and_encodings.py

import numpy as np
import pytest

from app.circuits.circuit import Circuit
from app.circuits.encodings import and_gate, copy_diagonal, copy_standard, measurement
from app.circuits.gates import PRIMITIVES, Gate, GateKind, Theory, fredkin, neg, pos, rx, swap, toffoli, x, z
from app.circuits.sampling import random_circuit
from app.circuits.shortcuts import expand_shortcuts
from app.semantics.evaluator import eval_cptp, eval_unitary


@pytest.fixture
def rng():
    """Seeded generator so every run draws the same circuits."""
    return np.random.default_rng(2024)


@pytest.mark.parametrize("gate", [
    x(0),
    z(1, neg(0)),
    rx(0.9, 2, pos(0, 1)),
    toffoli(0, 2, 1),
    fredkin(2, 0, 1),
    swap(0, 2, neg(1)),
    Gate(GateKind.CNOT, (1, 2), neg(0)),
    Gate(GateKind.P, (0,), ((1, True), (2, False)), 1.3),
])
@pytest.mark.parametrize("alt_mcp", [False, True])
def test_expansion_preserves_semantics_and_uses_primitives(gate, alt_mcp):
    # 1. Arrange
    c = Circuit(Theory.QC, 3, (gate,))

    # 2. Act
    expanded = expand_shortcuts(c, alt_mcp=alt_mcp)

    # 3. Assert
    assert all(g.kind in PRIMITIVES and not g.controls for g in expanded.gates)
    assert np.allclose(eval_unitary(expanded), eval_unitary(c), atol=1e-12)


def test_alternative_multicontrolled_phase_agrees_on_random_circuits(rng):
    for _ in range(10):
        # 1. Arrange
        c = random_circuit(rng, 3, 8, controls=True)

        # 2. Act
        default = eval_unitary(expand_shortcuts(c))
        alternative = eval_unitary(expand_shortcuts(c, alt_mcp=True))

        # 3. Assert
        assert np.allclose(default, alternative, atol=1e-10)


def _apply(superop: np.ndarray, rho: np.ndarray) -> np.ndarray:
    d = int(round(np.sqrt(superop.shape[0])))
    return (superop @ rho.reshape(-1)).reshape(d, d)


def test_measurement_erases_coherences():
    # 1. Arrange
    rho = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])

    # 2. Act
    out = _apply(eval_cptp(measurement()), rho)

    # 3. Assert
    assert np.allclose(out, np.diag([0.7, 0.3]), atol=1e-15)


def test_and_gate_maps_classical_distributions():
    # 1. Arrange
    probs = np.array([0.1, 0.2, 0.3, 0.4])

    # 2. Act
    out = _apply(eval_cptp(and_gate()), np.diag(probs).astype(complex))

    # 3. Assert
    assert np.allclose(out, np.diag([0.6, 0.4]), atol=1e-15)


def test_copy_isometries_duplicate_their_basis():
    # 1. Arrange
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)

    # 2. Act
    standard = eval_unitary(copy_standard(Theory.QCISO))
    diagonal = eval_unitary(copy_diagonal(Theory.QCISO))

    # 3. Assert
    assert np.allclose(standard, np.array([[1, 0], [0, 0], [0, 0], [0, 1]]))
    assert np.allclose(diagonal @ plus, np.kron(plus, plus))
    assert np.allclose(diagonal @ minus, np.kron(minus, minus))

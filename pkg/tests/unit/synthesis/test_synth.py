# tests/unit/synthesis/test_synth.py

import math

import numpy as np
import pytest
import scipy.linalg

from app.circuits.circuit import Circuit
from app.circuits.encodings import copy_diagonal, copy_standard
from app.circuits.gates import Theory, init
from app.circuits.sampling import random_isometry, random_unitary
from app.config import AppConfig
from app.errors import DimensionCap, NotIsometry, NotUnitary, ShapeMismatch
from app.semantics.evaluator import eval_unitary, rx_matrix
from app.synthesis.multiplexor import gray, ladder_angles, multiplexed_rotation
from app.synthesis.synth import (
    RESIDUAL_TOL, complete_isometry, demultiplex, synth_isometry, synth_unitary, synth_zero_controlled,
    zero_controlled_circuit,
)


@pytest.fixture
def rng():
    """Seeded generator for random targets."""
    return np.random.default_rng(8)


def _residual(c, m) -> float:
    return float(np.max(np.abs(eval_unitary(c) - m)))


def _rotation(axis: str, phi: float) -> np.ndarray:
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    if axis == "x":
        return rx_matrix(phi)
    if axis == "y":
        return np.array([[c, -s], [s, c]], dtype=complex)
    return np.diag([np.exp(-0.5j * phi), np.exp(0.5j * phi)])


def test_gray_code_changes_one_bit_at_a_time():
    codes = [gray(i) for i in range(8)]
    assert sorted(codes) == list(range(8))
    assert all(bin(a ^ b).count("1") == 1 for a, b in zip(codes, codes[1:]))


def test_ladder_angles_invert_the_sign_pattern(rng):
    # 1. Arrange
    phis = rng.uniform(-3, 3, size=8)

    # 2. Act
    theta = ladder_angles(phis)

    # 3. Assert
    for j in range(8):
        total = sum((-1) ** bin(j & gray(s)).count("1") * theta[s] for s in range(8))
        assert total == pytest.approx(phis[j])


@pytest.mark.parametrize("axis", ["x", "y", "z"])
@pytest.mark.parametrize("controls", [0, 1, 2])
def test_multiplexed_rotation_applies_one_rotation_per_control_state(rng, axis, controls):
    # 1. Arrange
    phis = rng.uniform(-4, 4, size=2 ** controls)
    n = controls + 1
    expected = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for j, phi in enumerate(phis):
        r = _rotation(axis, phi)
        for t in range(2):
            for t2 in range(2):
                expected[t2 * 2 ** controls + j, t * 2 ** controls + j] = r[t2, t]

    # 2. Act
    gates = multiplexed_rotation(axis, phis, 0, list(range(1, n)))

    # 3. Assert
    assert np.allclose(eval_unitary(Circuit(Theory.QC, n, tuple(gates))), expected, atol=1e-12)


def test_multiplexed_rotation_rejects_unknown_axes():
    with pytest.raises(ValueError):
        multiplexed_rotation("w", [0.1], 0, [])


def test_demultiplex_splits_two_blocks(rng):
    # 1. Arrange
    u0, u1 = random_unitary(rng, 4), random_unitary(rng, 4)

    # 2. Act
    v, phis, w = demultiplex(u0, u1)

    # 3. Assert
    d = np.exp(-0.5j * phis)
    assert np.allclose(v @ np.diag(d) @ w, u0)
    assert np.allclose(v @ np.diag(d.conj()) @ w, u1)


@pytest.mark.parametrize("qubits", [1, 2, 3])
def test_synth_unitary_round_trips(rng, qubits):
    for _ in range(40):
        # 1. Arrange
        u = random_unitary(rng, 2 ** qubits)

        # 2. Act
        c = synth_unitary(u)

        # 3. Assert
        assert c.theory is Theory.QC
        assert _residual(c, u) < RESIDUAL_TOL


def test_synth_unitary_keeps_the_global_phase():
    # 1. Arrange
    u = np.exp(0.7j) * np.eye(4)

    # 2. Act & 3. Assert
    assert _residual(synth_unitary(u), u) < RESIDUAL_TOL


@pytest.mark.parametrize("m, error", [
    (np.ones((2, 2)), NotUnitary),
    (np.eye(3), ShapeMismatch),
])
def test_synth_unitary_rejects_bad_input(m, error):
    with pytest.raises(error):
        synth_unitary(m)


def test_synth_unitary_respects_the_qubit_cap(mocker):
    # 1. Arrange
    mocker.patch.object(AppConfig, "SYNTH_MAX_QUBITS", 1)

    # 2. Act & 3. Assert
    with pytest.raises(DimensionCap):
        synth_unitary(np.eye(4))


@pytest.mark.parametrize("n_in, extra", [(0, 1), (0, 2), (1, 1), (1, 2), (2, 1), (1, 3), (2, 2)])
def test_synth_isometry_round_trips(rng, n_in, extra):
    for _ in range(20):
        # 1. Arrange
        v = random_isometry(rng, 2 ** (n_in + extra), 2 ** n_in)

        # 2. Act
        c = synth_isometry(v)

        # 3. Assert
        assert c.theory is Theory.QCISO
        assert c.n_in == n_in
        assert sum(g.kind.value == "INIT" for g in c.gates) == extra
        assert _residual(c, v) < RESIDUAL_TOL


def test_preparing_zero_starts_from_an_init():
    # 1. Arrange
    v = np.array([[1], [0]])

    # 2. Act
    c = synth_isometry(v)

    # 3. Assert
    assert c.n_in == 0
    assert c.gates[0] == init(0)
    assert _residual(c, v) < RESIDUAL_TOL


@pytest.mark.parametrize("reference", [copy_standard, copy_diagonal])
def test_copy_isometries_are_resynthesized(reference):
    # 1. Arrange
    v = eval_unitary(reference(Theory.QCISO))

    # 2. Act
    c = synth_isometry(v)

    # 3. Assert
    assert _residual(c, v) < RESIDUAL_TOL


def test_complete_isometry_keeps_the_given_columns(rng):
    # 1. Arrange
    v = random_isometry(rng, 8, 2)

    # 2. Act
    u = complete_isometry(v)

    # 3. Assert
    assert np.array_equal(u[:, :2], v)
    assert np.allclose(u.conj().T @ u, np.eye(8))


def test_complete_isometry_is_reproducible_per_seed(rng):
    # 1. Arrange
    v = random_isometry(rng, 4, 1)

    # 2. Act
    first, again = complete_isometry(v, seed=3), complete_isometry(v, seed=3)
    other = complete_isometry(v, seed=4)

    # 3. Assert
    assert np.array_equal(first, again)
    assert not np.allclose(first, other)
    assert np.allclose(other.conj().T @ other, np.eye(4))


def test_synth_isometry_rejects_non_isometries():
    with pytest.raises(NotIsometry):
        synth_isometry(np.array([[1.0], [1.0]]))


@pytest.mark.parametrize("n_init", [1, 2, 3])
def test_zero_controlled_circuit_reproduces_the_unitary(rng, n_init):
    for _ in range(10):
        # 1. Arrange
        k = 2 ** (3 - n_init)
        u = scipy.linalg.block_diag(np.eye(k), random_unitary(rng, 8 - k))

        # 2. Act
        c = zero_controlled_circuit(u, n_init)
        prepared = synth_zero_controlled(u, n_init)

        # 3. Assert
        assert _residual(c, u) < RESIDUAL_TOL
        assert prepared.n_in == 3 - n_init
        assert _residual(prepared, u[:, :k]) < RESIDUAL_TOL


def test_zero_controlled_circuit_needs_identity_columns(rng):
    with pytest.raises(ShapeMismatch, match="identity"):
        zero_controlled_circuit(random_unitary(rng, 4), 1)

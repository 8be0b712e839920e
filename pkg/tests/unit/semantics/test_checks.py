# tests/unit/semantics/test_checks.py

import numpy as np
import pytest

from app.circuits.circuit import Circuit
from app.circuits.encodings import measurement
from app.circuits.gates import Theory, h
from app.errors import CircuitParseError, DimensionMismatch, InvalidInput
from app.semantics.checks import (
    Tolerance, choi_matrix, is_cptp, is_isometry, is_unitary, matrices_equal, max_deviation, resolve_tolerance,
)
from app.semantics.evaluator import eval_cptp, unitary_superoperator
from app.semantics.matrix_io import format_matrix, parse_matrix, read_matrix, write_matrix


def test_max_deviation_is_the_largest_entry_modulus():
    # 1. Arrange
    a = np.array([[1, 0], [0, 1j]])
    b = np.array([[1, 0.1], [0, -1j]])

    # 2. Act & 3. Assert
    assert max_deviation(a, b) == pytest.approx(2.0)
    with pytest.raises(DimensionMismatch):
        max_deviation(a, np.eye(3))


@pytest.mark.parametrize("tol", [0, -1e-3])
def test_tolerance_must_be_positive(tol):
    with pytest.raises(InvalidInput):
        resolve_tolerance(tol)


def test_tolerance_object_and_floats_resolve_alike():
    assert resolve_tolerance(Tolerance(1e-6)) == resolve_tolerance(1e-6) == 1e-6
    assert matrices_equal(np.eye(2), np.eye(2) + 1e-7, tol=1e-6)
    assert not matrices_equal(np.eye(2), np.eye(2) + 1e-7, tol=1e-8)


def test_unitarity_and_isometry_predicates():
    # 1. Arrange
    v = np.array([[1, 0], [0, 0], [0, 0], [0, 1]], dtype=complex)

    # 2. Act & 3. Assert
    assert is_isometry(v)
    assert not is_unitary(v)
    assert is_unitary(np.array([[0, 1], [1, 0]]))
    assert not is_isometry(v.T)


def test_choi_matrix_of_the_identity_channel_is_the_maximally_entangled_projector():
    # 1. Arrange
    omega = np.array([1, 0, 0, 1])

    # 2. Act
    choi = choi_matrix(unitary_superoperator(np.eye(2)))

    # 3. Assert
    assert np.allclose(choi, np.outer(omega, omega))


def test_is_cptp_accepts_channels_and_rejects_non_trace_preserving_maps():
    # 1. Arrange
    channel = eval_cptp(measurement())
    hadamard = eval_cptp(Circuit(Theory.QCGROUND, 1, (h(0),)))

    # 2. Act & 3. Assert
    assert is_cptp(channel)
    assert is_cptp(hadamard)
    assert not is_cptp(2 * channel)


def test_matrix_text_format(tmp_path):
    # 1. Arrange
    m = np.array([[1 + 2j, -0.5], [1e-17j, 3]])
    path = tmp_path / "m.txt"

    # 2. Act
    write_matrix(m, path)

    # 3. Assert
    assert format_matrix(m).splitlines()[0] == "1+2j -0.5+0j"
    assert np.array_equal(read_matrix(path), m)


@pytest.mark.parametrize("text, line", [
    ("1 0\n0 x\n", 2),
    ("1 0\n0\n", 2),
])
def test_bad_matrix_text_reports_its_line(text, line):
    with pytest.raises(CircuitParseError) as excinfo:
        parse_matrix(text)
    assert excinfo.value.line == line

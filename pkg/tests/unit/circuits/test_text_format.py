# tests/unit/circuits/test_text_format.py

import math

import pytest

from app.circuits.circuit import Circuit
from app.circuits.gates import Theory, cx, free, h, init, neg, p, phase, pos, rx, toffoli
from app.circuits.text_format import (
    circuit_from_json, circuit_to_json, format_circuit, parse_angle, parse_circuit, read_circuit, write_circuit,
)
from app.errors import CircuitParseError


@pytest.mark.parametrize("text, expected", [
    ("0.25", 0.25),
    ("pi", math.pi),
    ("pi/2", math.pi / 2),
    ("-3*pi/4", -3 * math.pi / 4),
    ("2*pi", 2 * math.pi),
    ("-π/8", -math.pi / 8),
])
def test_parse_angle_accepts_floats_and_pi_forms(text, expected):
    assert parse_angle(text) == pytest.approx(expected)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValueError):
        parse_angle("pie")


def test_parse_circuit_reads_headers_controls_and_comments():
    # 1. Arrange
    text = """
    # Bell pair with a controlled phase
    qubits 3
    theory qcancilla
    H 0
    CX 0 1          # entangle
    CTRL[+0,-1] P(pi/4) 2
    INIT
    TOF 0 1 3
    FREE 3
    PHASE(0.5)
    """

    # 2. Act
    c = parse_circuit(text)

    # 3. Assert
    assert c.theory is Theory.QCANCILLA
    assert c.n_in == 3
    assert c.gates == (
        h(0), cx(0, 1), p(math.pi / 4, 2, ((0, True), (1, False))), init(3), toffoli(0, 1, 3), free(3), phase(0.5),
    )


@pytest.mark.parametrize("text, line", [
    ("qubits 1\nH 0\nFOO 0\n", 3),
    ("qubits 1\nP 0\n", 2),
    ("qubits 2\nCX 0\n", 2),
    ("qubits 1\nH 3\n", 2),
    ("qubits 1\ntheory qc\nINIT\n", 3),
    ("H 0\n", 1),
    ("qubits 1\nH 0\nqubits 2\n", 3),
])
def test_parse_errors_carry_line_numbers(text, line):
    # 2. Act & 3. Assert
    with pytest.raises(CircuitParseError) as excinfo:
        parse_circuit(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}: ")


def test_format_then_parse_gives_the_same_circuit():
    # 1. Arrange
    c = Circuit(Theory.QCISO, 2, (init(0), rx(0.123456789, 2, neg(0)), p(-1.5, 1, pos(0, 2)), h(1)))

    # 2. Act
    again = parse_circuit(format_circuit(c))

    # 3. Assert
    assert again == c


def test_json_mirror_and_file_suffix_dispatch(tmp_path):
    # 1. Arrange
    c = Circuit(Theory.QCGROUND, 1, (h(0),))
    path = tmp_path / "c.json"

    # 2. Act
    write_circuit(c, path)

    # 3. Assert
    assert '"theory": "qcground"' in path.read_text()
    assert read_circuit(path) == c
    assert circuit_from_json(circuit_to_json(c)) == c


def test_json_with_unknown_gate_is_a_parse_error():
    with pytest.raises(CircuitParseError, match="unknown gate"):
        circuit_from_json('{"qubits": 1, "gates": [{"kind": "T", "targets": [0]}]}')


def test_missing_file_is_a_parse_error(tmp_path):
    with pytest.raises(CircuitParseError, match="cannot read"):
        read_circuit(tmp_path / "missing.qc")

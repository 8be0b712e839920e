from app.circuits.gates import Gate, GateKind, Theory
from app.circuits.circuit import Circuit, compose_seq, tensor, adjoint, controlize, empty
from app.circuits.shortcuts import expand_shortcuts
from app.circuits.text_format import parse_circuit, format_circuit, read_circuit, write_circuit

__all__ = [
    "Gate", "GateKind", "Theory", "Circuit", "compose_seq", "tensor", "adjoint", "controlize",
    "empty", "expand_shortcuts", "parse_circuit", "format_circuit", "read_circuit", "write_circuit",
]

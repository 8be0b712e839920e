import logging
import math
import re
from pathlib import Path

from pydantic import ValidationError

from app.circuits.circuit import Circuit, FORBIDDEN, step_width
from app.circuits.gates import Gate, GateKind, Theory, TARGET_COUNT, ANGLED
from app.errors import CircuitParseError, InvalidCircuit
from app.models import CircuitModel, ControlModel, GateModel
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.TextFormat")

_KEYWORDS = {kind.value: kind for kind in GateKind}
_KEYWORDS["CNOT"] = GateKind.CNOT

_GATE_RE = re.compile(
    r"^(?:CTRL\[(?P<ctrl>[^\]]*)\]\s+)?"
    r"(?P<name>[A-Za-z]+)"
    r"(?:\((?P<angle>[^)]*)\))?"
    r"(?P<wires>(?:\s+\d+)*)\s*$"
)
_PI_RE = re.compile(
    r"^(?P<sign>[+-]?)\s*(?:(?P<num>\d+(?:\.\d*)?)\s*\*\s*)?pi\s*(?:/\s*(?P<den>\d+(?:\.\d*)?))?$"
)


def parse_angle(text: str) -> float:
    """Parses a float or a multiple of pi such as `pi/2`, `-3*pi/4`, `2*pi`."""
    text = text.strip()
    try:
        return float(text)
    except ValueError:
        pass
    m = _PI_RE.match(text.replace("π", "pi"))
    if not m:
        raise ValueError(f"cannot parse angle '{text}'")
    value = math.pi * float(m.group("num") or 1.0) / float(m.group("den") or 1.0)
    return -value if m.group("sign") == "-" else value


def _parse_controls(text: str) -> tuple[tuple[int, bool], ...]:
    controls = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if item[0] not in "+-":
            raise ValueError(f"control '{item}' needs a + or - polarity")
        controls.append((int(item[1:]), item[0] == "+"))
    return tuple(controls)


def parse_gate(line: str, width: int) -> Gate:
    """Parses one gate line; `width` is the live width, used as INIT's default position."""
    m = _GATE_RE.match(line.strip())
    if not m:
        raise ValueError(f"unrecognized gate syntax '{line.strip()}'")
    name = m.group("name").upper()
    kind = _KEYWORDS.get(name)
    if kind is None:
        raise ValueError(f"unknown gate '{name}'")
    wires = tuple(int(w) for w in m.group("wires").split())
    angle_text = m.group("angle")
    if kind in ANGLED:
        if angle_text is None:
            raise ValueError(f"{name} needs an angle")
        angle = parse_angle(angle_text)
    elif angle_text is not None:
        raise ValueError(f"{name} takes no angle")
    else:
        angle = 0.0
    if kind is GateKind.INIT and not wires:
        wires = (width,)
    if len(wires) != TARGET_COUNT[kind]:
        raise ValueError(f"{name} expects {TARGET_COUNT[kind]} wire(s), got {len(wires)}")
    controls = _parse_controls(m.group("ctrl")) if m.group("ctrl") is not None else ()
    return Gate(kind, wires, controls, angle)


def parse_circuit(text: str) -> Circuit:
    """
    Parses the text circuit format.

    Raises:
        CircuitParseError: With the 1-based line number of the first bad line.
    """
    n_in: int | None = None
    theory = Theory.QC
    gates: list[Gate] = []
    width = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0].lower()
        try:
            if head == "qubits":
                if gates:
                    raise ValueError("header must precede gates")
                n_in = int(line.split()[1])
                width = n_in
                continue
            if head == "theory":
                if gates:
                    raise ValueError("header must precede gates")
                theory = Theory(line.split()[1].lower())
                continue
            if n_in is None:
                raise ValueError("missing 'qubits <n>' header")
            gate = parse_gate(line, width)
            if gate.kind in FORBIDDEN[theory]:
                raise ValueError(f"{gate.kind.value} is not allowed in theory {theory.value}")
            width = step_width(width, gate)
            gates.append(gate)
        except (ValueError, IndexError) as e:
            raise CircuitParseError(str(e), line=lineno) from e
    if n_in is None:
        raise CircuitParseError("missing 'qubits <n>' header")
    return Circuit(theory, n_in, tuple(gates))


def _format_angle(angle: float) -> str:
    return repr(float(angle))


def format_gate(g: Gate) -> str:
    parts = []
    if g.controls:
        parts.append("CTRL[" + ",".join(f"{'+' if positive else '-'}{w}" for w, positive in g.controls) + "]")
    head = g.kind.value
    if g.kind in ANGLED:
        head += f"({_format_angle(g.angle)})"
    parts.append(head)
    parts.extend(str(t) for t in g.targets)
    return " ".join(parts)


def format_circuit(c: Circuit) -> str:
    lines = [f"qubits {c.n_in}", f"theory {c.theory.value}"]
    lines.extend(format_gate(g) for g in c.gates)
    return "\n".join(lines) + "\n"


# --- JSON mirror ---

def circuit_to_model(c: Circuit) -> CircuitModel:
    return CircuitModel(
        qubits=c.n_in,
        theory=c.theory.value,
        gates=[
            GateModel(
                kind=g.kind.value,
                angle=g.angle if g.kind in ANGLED else None,
                targets=list(g.targets),
                controls=[ControlModel(wire=w, positive=positive) for w, positive in g.controls],
            )
            for g in c.gates
        ],
    )


def circuit_from_model(model: CircuitModel) -> Circuit:
    try:
        theory = Theory(model.theory.lower())
    except ValueError as e:
        raise CircuitParseError(f"unknown theory '{model.theory}'") from e
    gates = []
    for i, gm in enumerate(model.gates):
        kind = _KEYWORDS.get(gm.kind.upper())
        if kind is None:
            raise CircuitParseError(f"gate {i}: unknown gate '{gm.kind}'")
        if kind in ANGLED and gm.angle is None:
            raise CircuitParseError(f"gate {i}: {gm.kind} needs an angle")
        try:
            gates.append(Gate(kind, tuple(gm.targets), tuple((c.wire, c.positive) for c in gm.controls),
                              gm.angle or 0.0))
        except InvalidCircuit as e:
            raise CircuitParseError(f"gate {i}: {e}") from e
    try:
        return Circuit(theory, model.qubits, tuple(gates))
    except InvalidCircuit as e:
        raise CircuitParseError(str(e)) from e


def circuit_to_json(c: Circuit) -> str:
    return circuit_to_model(c).model_dump_json(indent=2)


def circuit_from_json(text: str) -> Circuit:
    try:
        model = CircuitModel.model_validate_json(text)
    except ValidationError as e:
        raise CircuitParseError(f"invalid circuit JSON: {e.error_count()} error(s): {e.errors()[0]['msg']}") from e
    return circuit_from_model(model)


def read_circuit(path: str | Path) -> Circuit:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise CircuitParseError(f"cannot read {path}: {e}") from e
    logger.debug(f"Reading circuit from {path}")
    if path.suffix.lower() == ".json":
        return circuit_from_json(text)
    return parse_circuit(text)


def write_circuit(c: Circuit, path: str | Path) -> None:
    path = Path(path)
    path.write_text(circuit_to_json(c) if path.suffix.lower() == ".json" else format_circuit(c))

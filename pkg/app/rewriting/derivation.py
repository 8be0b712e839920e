"""
Derivation scripts: a start circuit, a list of directed rule applications and
the circuit they must end on.

    derivation CNOTCNOT
    start CNOTCNOT_start.qc
    step D R2L @1 wires=0
    step G L2R @0
    step D L2R @0
    end CNOTCNOT_end.qc

File names are relative to the script. `params=name:value,...` accepts the
angle syntax of the circuit format and `n=<k>` picks the size of a family rule.
"""
import logging
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field

from app.circuits.circuit import Circuit
from app.circuits.text_format import parse_angle, read_circuit
from app.config import AppConfig
from app.errors import DerivationParseError, DimensionCap, QceqError, StepFailed
from app.models import Report, ResultEntry
from app.rewriting.engine import Direction, apply_rule, same_up_to_deformation
from app.rules.soundness import semantics
from app.semantics.checks import max_deviation, resolve_tolerance
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Derivation")

SCRIPT_SUFFIX = ".drv"


class DerivationStep(BaseModel):
    rule: str
    direction: Direction
    anchor: int
    wires: Optional[list[int]] = None
    params: dict[str, float] = Field(default_factory=dict)
    n: Optional[int] = None
    line: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.rule} {self.direction.value} @{self.anchor}"


class Derivation(BaseModel):
    name: str
    start: Path
    end: Path
    steps: list[DerivationStep] = Field(default_factory=list)


def _parse_step(tokens: list[str], lineno: int) -> DerivationStep:
    if len(tokens) < 3 or not tokens[2].startswith("@"):
        raise DerivationParseError("expected 'step <RULE> <L2R|R2L> @<anchor> [options]'", lineno)
    fields: dict = {"rule": tokens[0], "line": lineno}
    try:
        fields["direction"] = Direction.parse(tokens[1])
        fields["anchor"] = int(tokens[2][1:])
        for option in tokens[3:]:
            key, _, value = option.partition("=")
            if key == "wires":
                fields["wires"] = [int(w) for w in value.split(",") if w]
            elif key == "params":
                pairs = (item.split(":", 1) for item in value.split(",") if item)
                fields["params"] = {name: parse_angle(angle) for name, angle in pairs}
            elif key == "n":
                fields["n"] = int(value)
            else:
                raise ValueError(f"unknown step option '{key}'")
    except (QceqError, ValueError) as e:
        raise DerivationParseError(str(e), lineno) from e
    return DerivationStep(**fields)


def parse_derivation(text: str, base: Path | str = ".") -> Derivation:
    """
    Raises:
        DerivationParseError: With the 1-based line of the first bad line.
    """
    base = Path(base)
    name = start = end = None
    steps: list[DerivationStep] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        head = head.lower()
        if head == "derivation" and rest:
            name = rest[0]
        elif head == "start" and rest:
            start = base / rest[0]
        elif head == "end" and rest:
            end = base / rest[0]
        elif head == "step":
            steps.append(_parse_step(rest, lineno))
        else:
            raise DerivationParseError(f"unexpected line '{line}'", lineno)
    if start is None or end is None:
        raise DerivationParseError("a derivation needs 'start' and 'end' lines")
    return Derivation(name=name or Path(start).stem, start=start, end=end, steps=steps)


def read_derivation(path: Path | str) -> Derivation:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise DerivationParseError(f"cannot read {path}: {e}") from e
    return parse_derivation(text, path.parent)


def shipped_derivations() -> list[Path]:
    return sorted(Path(AppConfig.DERIVATIONS_DIR).glob(f"*{SCRIPT_SUFFIX}"))


def _reference(c: Circuit):
    try:
        return semantics(c)
    except DimensionCap:
        logger.warning(f"Start circuit is too wide for semantic spot-checks ({c.max_width} qubits)")
        return None


def replay(d: Derivation, tol=None) -> list[ResultEntry]:
    """
    Runs every step and checks the final circuit against the expected end.

    Returns:
        One entry per step, then one for the final comparison.

    Raises:
        StepFailed: With the index of the failing step; `len(d.steps)` when
            only the final comparison fails.
    """
    eps = resolve_tolerance(tol)
    try:
        c = read_circuit(d.start)
        expected = read_circuit(d.end)
    except QceqError as e:
        raise StepFailed(0, f"cannot load circuits: {e}") from e
    reference = _reference(c)
    results = []
    for i, step in enumerate(d.steps):
        try:
            c = apply_rule(c, step.rule, step.direction, step.anchor, step.wires, step.params, step.n,
                           slack=AppConfig.ANCHOR_SLACK)
        except QceqError as e:
            raise StepFailed(i, f"{step}: {e}") from e
        deviation = None
        if reference is not None:
            deviation = max_deviation(semantics(c), reference)
            if deviation > eps:
                raise StepFailed(i, f"{step} changed the semantics by {deviation:.2e}")
        logger.info(f"{d.name} step {i}: {step} → {len(c.gates)} gate(s)")
        results.append(ResultEntry(name=f"{d.name}[{i}] {step}", passed=True, deviation=deviation,
                                   details={"gates": len(c.gates)}))
    if not same_up_to_deformation(c, expected):
        raise StepFailed(len(d.steps), "final circuit differs from the expected end up to deformation")
    results.append(ResultEntry(name=f"{d.name} end", passed=True))
    return results


def replay_report(paths: list[Path | str], tol=None) -> Report:
    """Replays each script; a failing script contributes one failing entry and the rest still run."""
    results: list[ResultEntry] = []
    for path in paths:
        try:
            d = read_derivation(path)
            results += replay(d, tol)
        except StepFailed as e:
            logger.warning(f"Replay of {path} failed at step {e.index}: {e.reason}")
            results.append(ResultEntry(name=str(Path(path).stem), passed=False,
                                       details={"step": e.index, "reason": e.reason}))
        except DerivationParseError as e:
            results.append(ResultEntry(name=str(Path(path).stem), passed=False, details={"error": str(e)}))
    return Report.from_results("replay", results, inputs={"scripts": [str(p) for p in paths]})

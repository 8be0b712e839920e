from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


# --- Circuit JSON mirror ---

class ControlModel(BaseModel):
    wire: int = Field(ge=0, description="Control wire index at the gate's position.")
    positive: bool = Field(default=True, description="False for a negative (open) control.")


class GateModel(BaseModel):
    kind: str = Field(description="Gate keyword as used by the text format, e.g. 'H', 'P', 'CX', 'INIT'.")
    angle: Optional[float] = Field(default=None, description="Angle in radians for PHASE, P and RX.")
    targets: list[int] = Field(default_factory=list, description="Target wires; for INIT the insertion position.")
    controls: list[ControlModel] = Field(default_factory=list)


class CircuitModel(BaseModel):
    """JSON mirror of the one-gate-per-line text format."""
    qubits: int = Field(ge=0, description="Number of input wires.")
    theory: str = Field(default="qc", description="One of qc, qciso, qcancilla, qcground.")
    gates: list[GateModel] = Field(default_factory=list)


# --- Reports ---

class ResultEntry(BaseModel):
    """One checked item: a rule, an identity, a replay step, an equivalence."""
    name: str
    passed: bool
    deviation: Optional[float] = Field(
        default=None,
        description="Max-entry distance between the two semantics that were compared."
    )
    details: dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    """
    The stable report schema emitted by every CLI subcommand.
    Serialized with `by_alias=True` so the verdict key is literally `pass`.
    """
    model_config = ConfigDict(populate_by_name=True)

    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    seed: Optional[int] = None
    results: list[ResultEntry] = Field(default_factory=list)
    max_deviation: Optional[float] = None
    passed: bool = Field(alias="pass")

    @classmethod
    def from_results(cls, command: str, results: list[ResultEntry], inputs: dict | None = None,
                     seed: int | None = None) -> "Report":
        deviations = [r.deviation for r in results if r.deviation is not None]
        return cls(
            command=command,
            inputs=inputs or {},
            seed=seed,
            results=results,
            max_deviation=max(deviations) if deviations else None,
            passed=all(r.passed for r in results),
        )

    def to_json(self) -> str:
        return self.model_dump_json(by_alias=True, indent=2)

    def render_text(self) -> str:
        lines = [f"{self.command}: {'PASS' if self.passed else 'FAIL'}"]
        for r in self.results:
            dev = "" if r.deviation is None else f"  deviation={r.deviation:.3e}"
            lines.append(f"  [{'ok' if r.passed else 'FAIL'}] {r.name}{dev}")
        if self.max_deviation is not None:
            lines.append(f"  max deviation: {self.max_deviation:.3e}")
        return "\n".join(lines)

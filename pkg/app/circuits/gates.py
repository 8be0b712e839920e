import math
from dataclasses import dataclass, replace
from enum import Enum

from app.errors import InvalidCircuit

TWO_PI = 2 * math.pi
FOUR_PI = 4 * math.pi


class Theory(str, Enum):
    """The four circuit languages, ordered by the generators they admit."""
    QC = "qc"
    QCISO = "qciso"
    QCANCILLA = "qcancilla"
    QCGROUND = "qcground"


class GateKind(str, Enum):
    # Primitive generators
    GLOBAL_PHASE = "PHASE"
    H = "H"
    P = "P"
    CNOT = "CX"
    SWAP = "SWAP"
    INIT = "INIT"
    FREE = "FREE"
    DISCARD = "DISCARD"
    # Shortcut gates. A P or RX gate carrying controls is the multi-controlled form.
    X = "X"
    Z = "Z"
    RX = "RX"
    TOFFOLI = "TOF"
    FREDKIN = "FREDKIN"


TARGET_COUNT = {
    GateKind.GLOBAL_PHASE: 0,
    GateKind.H: 1,
    GateKind.P: 1,
    GateKind.X: 1,
    GateKind.Z: 1,
    GateKind.RX: 1,
    GateKind.CNOT: 2,
    GateKind.SWAP: 2,
    GateKind.TOFFOLI: 3,
    GateKind.FREDKIN: 3,
    # INIT's single target is the position the fresh wire is inserted at.
    GateKind.INIT: 1,
    GateKind.FREE: 1,
    GateKind.DISCARD: 1,
}

ANGLED = frozenset({GateKind.GLOBAL_PHASE, GateKind.P, GateKind.RX})
CONTROLLABLE = frozenset({GateKind.P, GateKind.RX, GateKind.X, GateKind.Z, GateKind.CNOT, GateKind.SWAP})
WIDTH_CHANGING = frozenset({GateKind.INIT, GateKind.FREE, GateKind.DISCARD})
PRIMITIVES = frozenset({
    GateKind.GLOBAL_PHASE, GateKind.H, GateKind.P, GateKind.CNOT, GateKind.SWAP,
    GateKind.INIT, GateKind.FREE, GateKind.DISCARD,
})

# Periods used when angles are compared or canonicalized.
ANGLE_PERIOD = {
    GateKind.GLOBAL_PHASE: TWO_PI,
    GateKind.P: TWO_PI,
    GateKind.RX: FOUR_PI,
}


def wrap_angle(angle: float, period: float) -> float:
    """Maps `angle` into [0, period)."""
    r = math.fmod(angle, period)
    if r < 0:
        r += period
    if r >= period:
        r -= period
    return r


@dataclass(frozen=True, slots=True)
class Gate:
    """
    One generator instance on positional wires.

    Wire indices refer to the live wires at the gate's position in the circuit.
    Controls are (wire, positive) pairs; a negative control is X-conjugation
    of a positive one.
    """
    kind: GateKind
    targets: tuple[int, ...] = ()
    controls: tuple[tuple[int, bool], ...] = ()
    angle: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        object.__setattr__(self, "controls", tuple((int(w), bool(p)) for w, p in self.controls))
        object.__setattr__(self, "angle", float(self.angle))
        if len(self.targets) != TARGET_COUNT[self.kind]:
            raise InvalidCircuit(
                f"{self.kind.value} expects {TARGET_COUNT[self.kind]} target wire(s), got {len(self.targets)}"
            )
        if self.controls and self.kind not in CONTROLLABLE:
            raise InvalidCircuit(f"{self.kind.value} has no controlled form")
        if any(w < 0 for w in self.wires):
            raise InvalidCircuit(f"negative wire index in {self}")
        if len(set(self.wires)) != len(self.wires):
            raise InvalidCircuit(f"wire indices of {self} are not distinct")
        if self.kind is GateKind.SWAP and self.targets[0] > self.targets[1]:
            # Swap is symmetric; keep one spelling.
            object.__setattr__(self, "targets", (self.targets[1], self.targets[0]))

    @property
    def wires(self) -> tuple[int, ...]:
        if self.kind is GateKind.INIT:
            return ()
        return self.targets + tuple(w for w, _ in self.controls)

    @property
    def is_controlled(self) -> bool:
        return bool(self.controls)

    @property
    def has_angle(self) -> bool:
        return self.kind in ANGLED

    def with_angle(self, angle: float) -> "Gate":
        return replace(self, angle=angle)

    def remap(self, mapping) -> "Gate":
        """Renames wires through `mapping` (callable or indexable). INIT positions included."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return replace(
            self,
            targets=tuple(f(t) for t in self.targets),
            controls=tuple((f(w), p) for w, p in self.controls),
        )

    def shifted(self, offset: int) -> "Gate":
        return self.remap(lambda w: w + offset)

    def add_control(self, wire: int, positive: bool = True) -> "Gate":
        return replace(self, controls=self.controls + ((wire, positive),))

    def canonical(self) -> "Gate":
        period = ANGLE_PERIOD.get(self.kind)
        if period is None:
            return self
        return self.with_angle(wrap_angle(self.angle, period))

    def adjoint(self) -> "Gate":
        if self.kind in ANGLED:
            return self.with_angle(-self.angle)
        return self

    def __str__(self) -> str:
        from app.circuits.text_format import format_gate
        return format_gate(self)


# --- Constructors ---

def phase(angle: float) -> Gate:
    return Gate(GateKind.GLOBAL_PHASE, (), angle=angle)


def h(w: int) -> Gate:
    return Gate(GateKind.H, (w,))


def p(angle: float, w: int, controls=()) -> Gate:
    return Gate(GateKind.P, (w,), tuple(controls), angle)


def rx(angle: float, w: int, controls=()) -> Gate:
    return Gate(GateKind.RX, (w,), tuple(controls), angle)


def x(w: int, controls=()) -> Gate:
    return Gate(GateKind.X, (w,), tuple(controls))


def z(w: int, controls=()) -> Gate:
    return Gate(GateKind.Z, (w,), tuple(controls))


def cx(c: int, t: int) -> Gate:
    return Gate(GateKind.CNOT, (c, t))


def swap(a: int, b: int, controls=()) -> Gate:
    return Gate(GateKind.SWAP, (a, b), tuple(controls))


def toffoli(c1: int, c2: int, t: int) -> Gate:
    return Gate(GateKind.TOFFOLI, (c1, c2, t))


def fredkin(c: int, a: int, b: int) -> Gate:
    return Gate(GateKind.FREDKIN, (c, a, b))


def init(position: int) -> Gate:
    return Gate(GateKind.INIT, (position,))


def free(w: int) -> Gate:
    return Gate(GateKind.FREE, (w,))


def discard(w: int) -> Gate:
    return Gate(GateKind.DISCARD, (w,))


def pos(*wires: int) -> tuple[tuple[int, bool], ...]:
    """Positive controls on `wires`."""
    return tuple((w, True) for w in wires)


def neg(*wires: int) -> tuple[tuple[int, bool], ...]:
    return tuple((w, False) for w in wires)

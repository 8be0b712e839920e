import logging
import math
from dataclasses import dataclass

from app.circuits.gates import Gate, GateKind, Theory, p, rx
from app.errors import ArityMismatch, InvalidCircuit, TheoryMismatch, UnsupportedTheory
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Circuit")

FORBIDDEN = {
    Theory.QC: frozenset({GateKind.INIT, GateKind.FREE, GateKind.DISCARD}),
    Theory.QCISO: frozenset({GateKind.FREE, GateKind.DISCARD}),
    Theory.QCANCILLA: frozenset({GateKind.DISCARD}),
    Theory.QCGROUND: frozenset({GateKind.FREE, GateKind.GLOBAL_PHASE}),
}


def step_width(width: int, gate: Gate) -> int:
    """
    Checks that `gate` acts on live wires of a `width`-wire timeline and
    returns the width after it.

    Raises:
        InvalidCircuit: If a wire is not live at this point.
    """
    if gate.kind is GateKind.INIT:
        if not 0 <= gate.targets[0] <= width:
            raise InvalidCircuit(f"INIT position {gate.targets[0]} outside 0..{width}")
        return width + 1
    for w in gate.wires:
        if w >= width:
            raise InvalidCircuit(f"wire {w} is not live (width {width}) in {gate}")
    if gate.kind in (GateKind.FREE, GateKind.DISCARD):
        return width - 1
    return width


@dataclass(frozen=True, slots=True)
class Circuit:
    """
    Ordered gate list over a live-wire timeline.

    INIT inserts a wire at its target position, FREE and DISCARD remove one;
    every gate addresses wires by their position at that moment.
    """
    theory: Theory
    n_in: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "theory", Theory(self.theory))
        object.__setattr__(self, "gates", tuple(self.gates))
        self.validate()

    def validate(self) -> None:
        if self.n_in < 0:
            raise InvalidCircuit("negative input arity")
        forbidden = FORBIDDEN[self.theory]
        width = self.n_in
        for i, g in enumerate(self.gates):
            if g.kind in forbidden:
                raise InvalidCircuit(f"gate {i} ({g.kind.value}) is not allowed in theory {self.theory.value}")
            try:
                width = step_width(width, g)
            except InvalidCircuit as e:
                raise InvalidCircuit(f"gate {i}: {e}") from e

    @property
    def widths(self) -> list[int]:
        """Live width before each gate, followed by the output width."""
        out = [self.n_in]
        for g in self.gates:
            out.append(step_width(out[-1], g))
        return out

    @property
    def n_out(self) -> int:
        count = self.n_in
        for g in self.gates:
            if g.kind is GateKind.INIT:
                count += 1
            elif g.kind in (GateKind.FREE, GateKind.DISCARD):
                count -= 1
        return count

    @property
    def max_width(self) -> int:
        return max(self.widths)

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates) -> "Circuit":
        return Circuit(self.theory, self.n_in, tuple(gates))

    def with_theory(self, theory: Theory) -> "Circuit":
        return Circuit(theory, self.n_in, self.gates)

    def canonicalize(self) -> "Circuit":
        """P and global phase angles modulo 2π, Rx modulo 4π."""
        return self.with_gates(g.canonical() for g in self.gates)


def empty(n: int = 0, theory: Theory = Theory.QC) -> Circuit:
    return Circuit(theory, n, ())


def compose_seq(a: Circuit, b: Circuit) -> Circuit:
    """`a` then `b`."""
    if a.theory is not b.theory:
        raise TheoryMismatch(f"cannot compose {a.theory.value} with {b.theory.value}")
    if a.n_out != b.n_in:
        raise ArityMismatch(f"output arity {a.n_out} does not match input arity {b.n_in}")
    return Circuit(a.theory, a.n_in, a.gates + b.gates)


def tensor(a: Circuit, b: Circuit) -> Circuit:
    """`a` on the top wires, `b` below it; `a` runs first, then `b` shifted by a's output width."""
    if a.theory is not b.theory:
        raise TheoryMismatch(f"cannot tensor {a.theory.value} with {b.theory.value}")
    offset = a.n_out
    return Circuit(a.theory, a.n_in + b.n_in, a.gates + tuple(g.shifted(offset) for g in b.gates))


def adjoint(c: Circuit) -> Circuit:
    if c.theory is not Theory.QC or any(g.kind in FORBIDDEN[Theory.QC] for g in c.gates):
        raise UnsupportedTheory("adjoint is only defined for vanilla circuits")
    return c.with_gates(g.adjoint() for g in reversed(c.gates))


def euler_h(w: int) -> list[Gate]:
    """H as P(π/2) Rx(π/2) P(π/2), exact including phase."""
    return [p(math.pi / 2, w), rx(math.pi / 2, w), p(math.pi / 2, w)]


def swap_as_cnots(a: int, b: int, controls=()) -> list[Gate]:
    return [
        Gate(GateKind.CNOT, (a, b), controls),
        Gate(GateKind.CNOT, (b, a), controls),
        Gate(GateKind.CNOT, (a, b), controls),
    ]


def _controlled(g: Gate) -> list[Gate]:
    """`g` (already shifted by one) controlled positively on wire 0."""
    kind = g.kind
    if kind is GateKind.GLOBAL_PHASE:
        return [p(g.angle, 0)]
    if kind is GateKind.H:
        return [q.add_control(0) for q in euler_h(g.targets[0])]
    if kind is GateKind.TOFFOLI:
        c1, c2, t = g.targets
        return [Gate(GateKind.X, (t,), ((c1, True), (c2, True), (0, True)))]
    if kind is GateKind.FREDKIN:
        c, a, b = g.targets
        return swap_as_cnots(a, b, ((c, True), (0, True)))
    if kind is GateKind.SWAP:
        a, b = g.targets
        return swap_as_cnots(a, b, g.controls + ((0, True),))
    return [g.add_control(0)]


def controlize(c: Circuit) -> Circuit:
    """
    Prepends a control wire and controls every gate on it.

    ⟦controlize(c)⟧ = diag(I, ⟦c⟧) with the control as the most significant wire.
    """
    if c.theory is not Theory.QC:
        raise UnsupportedTheory("controlize requires a vanilla circuit")
    gates: list[Gate] = []
    for g in c.gates:
        gates.extend(_controlled(g.shifted(1)))
    logger.debug(f"Controlized {len(c.gates)} gate(s) into {len(gates)}.")
    return Circuit(Theory.QC, c.n_in + 1, tuple(gates))


def wire_timeline(c: Circuit) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]], list[int]]:
    """
    Assigns a persistent id to every wire.

    Returns:
        A tuple (live_before, gate_ids, order) where live_before[i] lists the live
        wire ids (by position) before gate i, gate_ids[i] gives the ids the gate
        touches (the created id for INIT), and `order` is a total order of all ids
        consistent with every positional layout.
    """
    live = list(range(c.n_in))
    order = list(range(c.n_in))
    next_id = c.n_in
    live_before: list[tuple[int, ...]] = []
    gate_ids: list[tuple[int, ...]] = []
    for g in c.gates:
        live_before.append(tuple(live))
        if g.kind is GateKind.INIT:
            position = g.targets[0]
            new = next_id
            next_id += 1
            if position < len(live):
                order.insert(order.index(live[position]), new)
            elif live:
                order.insert(order.index(live[-1]) + 1, new)
            else:
                order.append(new)
            live.insert(position, new)
            gate_ids.append((new,))
            continue
        ids = tuple(live[w] for w in g.wires)
        gate_ids.append(ids)
        if g.kind in (GateKind.FREE, GateKind.DISCARD):
            live.pop(g.targets[0])
    live_before.append(tuple(live))
    return live_before, gate_ids, order

"""Expansion of shortcut gates into the primitive generators H, P, CNot, Swap and global phase."""
import math

from app.circuits.circuit import Circuit
from app.circuits.gates import Gate, GateKind, Theory, PRIMITIVES, phase, h, p, cx


def _x(w: int) -> list[Gate]:
    return [h(w), p(math.pi, w), h(w)]


def _mcp(angle: float, controls: list[int], t: int, alt: bool) -> list[Gate]:
    """
    Multi-controlled phase, all controls positive.

    The default definition computes the phase of the last control into the
    target with a CNot pair; the alternative one does it the other way round.
    """
    if not controls:
        return [p(angle, t)]
    rest, c = controls[:-1], controls[-1]
    if alt:
        c, t = t, c
    return (
        _mcp(angle / 2, rest, c, alt)
        + _mcp(angle / 2, rest, t, alt)
        + [cx(c, t)]
        + _mcp(-angle / 2, rest, t, alt)
        + [cx(c, t)]
    )


def _mcrx(angle: float, controls: list[int], t: int, alt: bool) -> list[Gate]:
    if not controls:
        return [phase(-angle / 2), h(t), p(angle, t), h(t)]
    return (
        [h(t)]
        + _mcp(angle, controls, t, alt)
        + [h(t)]
        + _mcp(-angle / 2, controls[:-1], controls[-1], alt)
    )


def _mcx(controls: list[int], t: int, alt: bool) -> list[Gate]:
    if not controls:
        return _x(t)
    if len(controls) == 1:
        return [cx(controls[0], t)]
    return [h(t)] + _mcp(math.pi, controls, t, alt) + [h(t)]


def _positive(g: Gate, alt: bool) -> list[Gate]:
    controls = [w for w, _ in g.controls]
    kind = g.kind
    if kind is GateKind.P:
        return _mcp(g.angle, controls, g.targets[0], alt)
    if kind is GateKind.Z:
        return _mcp(math.pi, controls, g.targets[0], alt)
    if kind is GateKind.RX:
        return _mcrx(g.angle, controls, g.targets[0], alt)
    if kind is GateKind.X:
        return _mcx(controls, g.targets[0], alt)
    if kind is GateKind.CNOT:
        return _mcx(controls + [g.targets[0]], g.targets[1], alt)
    if kind is GateKind.TOFFOLI:
        c1, c2, t = g.targets
        return _mcx([c1, c2], t, alt)
    if kind is GateKind.SWAP:
        a, b = g.targets
        if not controls:
            return [g]
        return [cx(b, a)] + _mcx(controls + [a], b, alt) + [cx(b, a)]
    if kind is GateKind.FREDKIN:
        c, a, b = g.targets
        return [cx(b, a)] + _mcx([c, a], b, alt) + [cx(b, a)]
    return [g]


def expand_gate(g: Gate, alt_mcp: bool = False) -> list[Gate]:
    """Primitive gate list for one gate; negative controls become X-conjugated positive ones."""
    if g.kind in PRIMITIVES and not g.controls:
        return [g]
    negatives = [w for w, positive in g.controls if not positive]
    flip = [q for w in negatives for q in _x(w)]
    positive = Gate(g.kind, g.targets, tuple((w, True) for w, _ in g.controls), g.angle)
    return flip + _positive(positive, alt_mcp) + flip


def expand_shortcuts(c: Circuit, alt_mcp: bool = False) -> Circuit:
    """
    Rewrites every shortcut gate with the inductive definitions.

    Args:
        c: Any circuit.
        alt_mcp: Use the alternative multi-controlled phase definition.

    Returns:
        A circuit over the primitive generators of `c.theory`. In QCground the
        global phases produced by Rx are dropped since that language has none.
    """
    gates: list[Gate] = []
    for g in c.gates:
        gates.extend(expand_gate(g, alt_mcp))
    if c.theory is Theory.QCGROUND:
        gates = [g for g in gates if g.kind is not GateKind.GLOBAL_PHASE]
    return c.with_gates(gates)

"""
Applying rules to circuits.

A rewrite replaces a matched side by the other side of the same rule. Gates
skipped inside the matched block are commuted out first, wire ids created by
the replaced side are handed to the new side, and the result is laid out again
positionally.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from app.circuits.circuit import Circuit
from app.circuits.gates import ANGLE_PERIOD, Gate, GateKind, WIDTH_CHANGING, x
from app.errors import BadParameters, StaleMatch
from app.rules.catalog import get_rule
from app.rules.schema import Rule, Side
from app.rules.soundness import semantics
from app.semantics.checks import max_deviation
from app.utils.logger_config import APP_LOGGER_NAME
from app.rewriting.matcher import (
    IdCircuit, IdGate, Match, find_matches, from_id_circuit, hinted_match, side_pattern, solve_constraints, to_id_circuit,
)

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Engine")

# Compound rule turning a negative control into a positive one between two X gates.
BULLET = "BULLET"
SOLVED_SIDES_TOL = 1e-9


class Direction(str, Enum):
    L2R = "L2R"
    R2L = "R2L"

    @property
    def source(self) -> Side:
        return Side.LHS if self is Direction.L2R else Side.RHS

    @property
    def target(self) -> Side:
        return self.source.other

    @classmethod
    def parse(cls, text: str) -> "Direction":
        try:
            return cls(text.strip().upper())
        except ValueError as e:
            raise BadParameters(f"direction must be L2R or R2L, got {text!r}") from e


@dataclass(frozen=True)
class Rewrite:
    circuit: Circuit
    match: Match
    values: dict[str, float]


def _check_current(c: Circuit, m: Match) -> None:
    if m.stop > len(c.gates) or tuple(c.gates[m.start:m.stop]) != m.fingerprint:
        raise StaleMatch(f"{m.rule.name} match at gate {m.start} no longer fits the circuit")


def bind_values(m: Match, hints: Mapping[str, float] | None = None) -> dict[str, float]:
    """
    Every angle of both sides for a match: matched angles, the caller's hints
    and whatever the rule can solve from them.

    Raises:
        BadParameters: If hints contradict the matched angles or angles are missing.
    """
    known = {**m.params, **{k: float(v) for k, v in (hints or {}).items()}}
    bound = solve_constraints(m.constraints, known)
    if bound is None:
        raise BadParameters(f"{m.rule.name}: parameters {dict(hints or {})} contradict the matched angles")
    values = m.rule.complete(bound)
    if m.rule.solver_filled:
        _check_solved_sides(m.rule, m.n, values)
    return values


def _check_solved_sides(rule: Rule, n: int, values: Mapping[str, float]) -> None:
    arity = rule.arity(n)
    lhs = Circuit(rule.home, arity, tuple(rule.lhs(values, n)))
    rhs = Circuit(rule.home, arity, tuple(rule.rhs(values, n)))
    deviation = max_deviation(semantics(lhs), semantics(rhs))
    if deviation > SOLVED_SIDES_TOL:
        raise BadParameters(f"{rule.name}: the given angles do not make both sides equal (deviation {deviation:.2e})")


def apply_match(c: Circuit, m: Match, hints: Mapping[str, float] | None = None) -> Rewrite:
    """
    Replaces the matched side by the other side of the rule.

    Raises:
        StaleMatch: If `c` changed where `m` was found.
        BadParameters: If the other side's angles cannot be determined.
    """
    _check_current(c, m)
    values = bind_values(m, hints)
    rule, arity = m.rule, m.rule.arity(m.n)
    target = to_id_circuit(Circuit(c.theory, arity, tuple(rule.builder(m.side.other)(values, m.n))))
    ids = to_id_circuit(c)
    rank = dict(ids.rank)
    mapping = {pin: m.id_map[pin] for pin in range(arity) if pin in m.id_map}
    reusable = iter([m.id_map[pid] for pid in side_pattern(rule, m.side, m.n).created])
    fresh = ids.next_id
    for g in target.gates:
        if g.kind is not GateKind.INIT:
            continue
        cid = next(reusable, None)
        if cid is None:
            # New wires go below every existing one.
            cid, fresh = fresh, fresh + 1
            rank[cid] = max(rank.values(), default=-1) + 1
        mapping[g.targets[0]] = cid
    try:
        replacement = [
            IdGate(g.kind, tuple(mapping[t] for t in g.targets),
                    tuple((mapping[w], positive) for w, positive in g.controls), g.angle)
            for g in target.gates
        ]
    except KeyError as e:
        raise BadParameters(f"{rule.name}: pattern wire {e.args[0]} is unbound; pass wires=") from e
    gates = (
        ids.gates[:m.start]
        + [ids.gates[q] for q in m.before]
        + replacement
        + [ids.gates[q] for q in m.after]
        + ids.gates[m.stop:]
    )
    result = from_id_circuit(IdCircuit(ids.inputs, gates, rank), c.theory)
    logger.debug(f"{rule.name} {m.side.value}→{m.side.other.value} at gate {m.start} (n={m.n})")
    return Rewrite(result, m, values)


def _slack_order(anchor: int, slack: int) -> list[int]:
    out = [anchor]
    for d in range(1, slack + 1):
        out += [anchor - d, anchor + d]
    return [a for a in out if a >= 0]


def _fits_wires(c: Circuit, m: Match, wires) -> bool:
    if wires is None:
        return True
    at_anchor = m.wires_at_anchor(c)
    return all(at_anchor.get(pin, w) == w for pin, w in enumerate(wires))


def candidate_matches(c: Circuit, rule: Rule, direction: Direction, anchor: int | None = None,
                      wires=None, n: int | None = None, slack: int = 0) -> list[Match]:
    """Matches of the source side, nearest to `anchor` first."""
    source = direction.source
    if not side_pattern(rule, source, rule.resolve_n(n)).gates:
        return [hinted_match(c, rule, source, 0 if anchor is None else anchor, wires, n)]
    if anchor is None:
        found = find_matches(c, rule, source, n)
    else:
        found = [m for a in _slack_order(anchor, slack) for m in find_matches(c, rule, source, n, start=a)]
    return [m for m in found if _fits_wires(c, m, wires)]


def apply_rule(c: Circuit, rule: Rule | str, direction: Direction | str = Direction.L2R, anchor: int | None = None,
               wires=None, params: Mapping[str, float] | None = None, n: int | None = None,
               slack: int = 0) -> Circuit:
    """
    Rewrites one occurrence of a rule side in `c`.

    Args:
        anchor: Index of the first matched gate (the insertion point for an empty side).
        wires: Circuit positions, at the anchor, of the rule's input wires.
        params: Angles the match cannot determine.
        slack: How far from `anchor` a match may start.

    Raises:
        BadParameters: If nothing matches or the other side's angles are undetermined.
    """
    direction = Direction.parse(direction) if isinstance(direction, str) else direction
    if isinstance(rule, str) and rule.upper() == BULLET:
        return apply_bullet(c, direction, anchor, wires)
    rule = get_rule(rule) if isinstance(rule, str) else rule
    matches = candidate_matches(c, rule, direction, anchor, wires, n, slack)
    if not matches:
        where = "" if anchor is None else f" near gate {anchor}"
        raise BadParameters(f"no occurrence of {rule.name} {direction.source.value}{where}")
    error: BadParameters | None = None
    for m in matches:
        try:
            return apply_match(c, m, params).circuit
        except BadParameters as e:
            error = e
    raise error


def rewrite_pass(c: Circuit, rule: Rule | str, direction: Direction | str = Direction.L2R,
                 params: Mapping[str, float] | None = None, n: int | None = None) -> tuple[Circuit, int]:
    """Applies the rule at every non-overlapping occurrence, left to right, once."""
    rule = get_rule(rule) if isinstance(rule, str) else rule
    direction = Direction.parse(direction) if isinstance(direction, str) else direction
    count, position = 0, 0
    while position < len(c.gates):
        applied = False
        for m in find_matches(c, rule, direction.source, n, start=position):
            try:
                rewrite = apply_match(c, m, params)
            except BadParameters:
                continue
            added = len(rewrite.circuit.gates) - len(c.gates) + (m.stop - m.start)
            c, count, applied = rewrite.circuit, count + 1, True
            position = m.start + max(added, 1)
            break
        if not applied:
            position += 1
    logger.info(f"{rule.name} {direction.value}: {count} rewrite(s)")
    return c, count


# --- Negative controls ---

def apply_bullet(c: Circuit, direction: Direction, anchor: int | None, wires=None) -> Circuit:
    """
    L2R: a gate with a negative control on wire w becomes X(w), the gate with a
    positive control on w, X(w). R2L contracts that triple back.

    Raises:
        BadParameters: If the gates at `anchor` do not have that shape.
    """
    if anchor is None or not 0 <= anchor < len(c.gates):
        raise BadParameters(f"{BULLET} needs an anchor inside the circuit")
    wire = None if not wires else int(list(wires)[0])
    gates = list(c.gates)
    if direction is Direction.L2R:
        g = gates[anchor]
        negatives = [w for w, positive in g.controls if not positive]
        wire = negatives[0] if wire is None and negatives else wire
        if wire is None or wire not in negatives:
            raise BadParameters(f"gate {anchor} ({g}) has no negative control to expand")
        flipped = Gate(g.kind, g.targets, tuple((w, positive or w == wire) for w, positive in g.controls), g.angle)
        gates[anchor:anchor + 1] = [x(wire), flipped, x(wire)]
        return c.with_gates(gates)
    triple = gates[anchor:anchor + 3]
    if len(triple) != 3:
        raise BadParameters(f"{BULLET} R2L needs three gates from {anchor}")
    first, g, last = triple
    if wire is None and first.kind is GateKind.X:
        wire = first.targets[0]
    if wire is None or not (first == last == x(wire) and (wire, True) in g.controls):
        raise BadParameters(f"gates {anchor}..{anchor + 2} are not X, positively controlled gate, X on one wire")
    contracted = Gate(g.kind, g.targets, tuple((w, positive and w != wire) for w, positive in g.controls), g.angle)
    gates[anchor:anchor + 3] = [contracted]
    return c.with_gates(gates)


# --- Deformation normal form ---

def _normal_gate(g: Gate) -> Gate:
    g = g.canonical()
    targets = g.targets
    if g.kind is GateKind.TOFFOLI:
        targets = tuple(sorted(targets[:2])) + targets[2:]
    elif g.kind is GateKind.FREDKIN:
        targets = targets[:1] + tuple(sorted(targets[1:]))
    return Gate(g.kind, targets, tuple(sorted(g.controls)), g.angle)


def _layered(segment: list[Gate]) -> list[Gate]:
    free_at: dict[int, int] = {}
    keyed = []
    for i, g in enumerate(segment):
        layer = max((free_at.get(w, 0) for w in g.wires), default=0)
        for w in g.wires:
            free_at[w] = layer + 1
        keyed.append(((layer, min(g.wires, default=-1), i), g))
    return [g for _, g in sorted(keyed, key=lambda item: item[0])]


def deformation_normal_form(c: Circuit) -> Circuit:
    """
    A canonical representative up to commuting gates on disjoint wires.

    Width-changing gates act as barriers; between them gates are placed in
    their earliest layer and ordered by (layer, top wire). Global phases sort
    first within their segment.
    """
    out: list[Gate] = []
    segment: list[Gate] = []
    for g in c.gates:
        if g.kind in WIDTH_CHANGING:
            out += _layered(segment) + [g]
            segment = []
        else:
            segment.append(_normal_gate(g))
    out += _layered(segment)
    return c.with_gates(out)


def gates_close(a: Gate, b: Gate, tol: float = SOLVED_SIDES_TOL) -> bool:
    if (a.kind, a.targets, a.controls) != (b.kind, b.targets, b.controls):
        return False
    period = ANGLE_PERIOD.get(a.kind)
    if period is None:
        return True
    diff = abs(a.angle - b.angle) % period
    return min(diff, period - diff) <= tol


def same_up_to_deformation(a: Circuit, b: Circuit) -> bool:
    """Structural equality of the deformation normal forms, angles modulo their period."""
    if a.theory is not b.theory or a.n_in != b.n_in or len(a.gates) != len(b.gates):
        return False
    na, nb = deformation_normal_form(a), deformation_normal_form(b)
    return all(gates_close(ga, gb) for ga, gb in zip(na.gates, nb.gates))

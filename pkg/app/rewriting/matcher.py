"""
Pattern matching of rule sides against circuits.

Matching works on persistent wire ids rather than positions so that INIT, FREE
and DISCARD do not shift the binding. A side embeds into a circuit when its
gates appear in order within a bounded window and every gate skipped inside the
window can be commuted out of the block on disjoint wires.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from app.circuits.circuit import Circuit, wire_timeline
from app.circuits.gates import ANGLE_PERIOD, WIDTH_CHANGING, Gate, GateKind, wrap_angle
from app.config import AppConfig
from app.errors import BadParameters, TheoryMismatch
from app.rules.schema import AngleExpr, Rule, Side
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Matcher")

ANGLE_TOL = 1e-9

# Target slots that may be exchanged without changing the gate.
_SYMMETRIC_TARGETS = {
    GateKind.SWAP: ((0, 1),),
    GateKind.TOFFOLI: ((0, 1),),
    GateKind.FREDKIN: ((1, 2),),
}


@dataclass(frozen=True)
class IdGate:
    """A gate on persistent wire ids. For INIT the single target is the created id."""
    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[tuple[int, bool], ...] = ()
    angle: float = 0.0

    @property
    def ids(self) -> frozenset[int]:
        return frozenset(self.targets) | frozenset(w for w, _ in self.controls)


@dataclass
class IdCircuit:
    inputs: tuple[int, ...]
    gates: list[IdGate]
    rank: dict[int, int]

    @property
    def next_id(self) -> int:
        return max(self.rank, default=-1) + 1


def to_id_circuit(c: Circuit) -> IdCircuit:
    live_before, gate_ids, order = wire_timeline(c)
    gates = []
    for i, g in enumerate(c.gates):
        if g.kind is GateKind.INIT:
            gates.append(IdGate(GateKind.INIT, gate_ids[i]))
            continue
        live = live_before[i]
        gates.append(IdGate(
            g.kind,
            tuple(live[t] for t in g.targets),
            tuple((live[w], positive) for w, positive in g.controls),
            g.angle,
        ))
    return IdCircuit(tuple(range(c.n_in)), gates, {wid: r for r, wid in enumerate(order)})


def from_id_circuit(c: IdCircuit, theory) -> Circuit:
    """Positional circuit whose live wires are kept sorted by rank."""
    live = sorted(c.inputs, key=c.rank.__getitem__)
    gates = []
    for g in c.gates:
        if g.kind is GateKind.INIT:
            new = g.targets[0]
            position = sum(1 for w in live if c.rank[w] < c.rank[new])
            live.insert(position, new)
            gates.append(Gate(GateKind.INIT, (position,)))
            continue
        gates.append(Gate(
            g.kind,
            tuple(live.index(t) for t in g.targets),
            tuple((live.index(w), positive) for w, positive in g.controls),
            g.angle,
        ))
        if g.kind in (GateKind.FREE, GateKind.DISCARD):
            live.remove(g.targets[0])
    return Circuit(theory, len(c.inputs), tuple(gates))


@dataclass(frozen=True)
class SidePattern:
    """A rule side on pattern ids, with the angle expression of every gate."""
    arity: int
    gates: tuple[IdGate, ...]
    exprs: tuple[AngleExpr | None, ...]
    created: tuple[int, ...]


def side_pattern(rule: Rule, side: Side, n: int) -> SidePattern:
    pattern = rule.pattern(side, n)
    skeleton = pattern.instantiate({name: 0.0 for name in pattern.params}, rule.home)
    ids = to_id_circuit(skeleton)
    created = tuple(g.targets[0] for g in ids.gates if g.kind is GateKind.INIT)
    return SidePattern(pattern.n_in, tuple(ids.gates), tuple(t.angle for t in pattern.templates), created)


@dataclass(frozen=True)
class Match:
    """
    An embedding of one side of `rule` into a circuit.

    `indices` are the matched gate positions; the block spans `start`..`stop`
    (exclusive) and its unmatched gates are split into `before` and `after`,
    the order they take once commuted out of the block.
    """
    rule: Rule
    side: Side
    n: int
    start: int
    stop: int
    indices: tuple[int, ...]
    id_map: dict[int, int]
    params: dict[str, float]
    constraints: tuple[tuple[AngleExpr, float, float], ...]
    before: tuple[int, ...] = ()
    after: tuple[int, ...] = ()
    fingerprint: tuple[Gate, ...] = field(default=(), compare=False)

    @property
    def anchor(self) -> int:
        return self.start

    def wires_at_anchor(self, c: Circuit) -> dict[int, int]:
        """Pattern input → circuit position at the anchor, for the bound inputs."""
        live = wire_timeline(c)[0][self.start]
        arity = self.rule.arity(self.n)
        return {pin: live.index(cid) for pin, cid in self.id_map.items() if pin < arity and cid in live}


def _target_orders(kind: GateKind, targets: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    yield targets
    for i, j in _SYMMETRIC_TARGETS.get(kind, ()):
        swapped = list(targets)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        yield tuple(swapped)


def _bind_wire(pid: int, cid: int, id_map: dict[int, int], used: set[int]) -> bool:
    bound = id_map.get(pid)
    if bound is not None:
        return bound == cid
    if cid in used:
        return False
    id_map[pid] = cid
    used.add(cid)
    return True


def _bind_gate(pg: IdGate, cg: IdGate, id_map: dict[int, int]) -> Iterator[dict[int, int]]:
    if pg.kind is not cg.kind or len(pg.targets) != len(cg.targets) or len(pg.controls) != len(cg.controls):
        return
    if pg.kind is GateKind.INIT:
        if pg.targets[0] in id_map or cg.targets[0] in id_map.values():
            return
        yield {**id_map, pg.targets[0]: cg.targets[0]}
        return
    seen = []
    for targets in _target_orders(cg.kind, cg.targets):
        for controls in itertools.permutations(cg.controls):
            if any(p[1] != c[1] for p, c in zip(pg.controls, controls)):
                continue
            trial = dict(id_map)
            used = set(trial.values())
            pairs = list(zip(pg.targets, targets)) + [(p[0], c[0]) for p, c in zip(pg.controls, controls)]
            if all(_bind_wire(pid, cid, trial, used) for pid, cid in pairs) and trial not in seen:
                seen.append(trial)
                yield trial


def solve_constraints(constraints, known: Mapping[str, float] | None = None) -> dict[str, float] | None:
    """
    Binds parameter names from (expr, value, period) constraints, one unknown at a
    time, then checks every fully bound constraint modulo its period.

    Returns:
        The bindings, or None when some constraint is violated. Names that never
        become the only unknown of a constraint stay unbound.
    """
    params = dict(known or {})
    progress = True
    while progress:
        progress = False
        for expr, value, _ in constraints:
            unknown = [name for name in expr.names if name not in params]
            if len(unknown) != 1:
                continue
            name = unknown[0]
            coeff = dict(expr.terms)[name]
            rest = expr.const + sum(c * params[k] for k, c in expr.terms if k != name)
            params[name] = (value - rest) / coeff
            progress = True
    for expr, value, period in constraints:
        if any(name not in params for name in expr.names):
            continue
        diff = wrap_angle(expr.evaluate(params) - value, period)
        if min(diff, period - diff) > ANGLE_TOL:
            return None
    return params


def _split_skipped(cg: list[IdGate], indices: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """
    Sends each skipped gate after the block when it is disjoint from the later
    matched gates, otherwise before it when disjoint from the earlier ones.
    """
    matched = set(indices)
    before, after = [], []
    for q in range(indices[0], indices[-1] + 1):
        if q in matched:
            continue
        g = cg[q]
        if g.kind in WIDTH_CHANGING:
            return None
        later = [cg[i] for i in indices if i > q]
        earlier = [cg[i] for i in indices if i < q]
        if all(g.ids.isdisjoint(m.ids) for m in later):
            after.append(q)
        elif all(g.ids.isdisjoint(m.ids) for m in earlier):
            before.append(q)
        else:
            return None
    for q_after in after:
        for q_before in before:
            if q_after < q_before and not cg[q_after].ids.isdisjoint(cg[q_before].ids):
                return None
    return tuple(before), tuple(after)


def _embeddings(cg: list[IdGate], pattern: SidePattern, start: int, span: int):
    """Depth-first search of in-order embeddings whose first gate sits at `start`."""
    pg = pattern.gates
    limit = min(len(cg), start + span)

    def extend(j: int, last: int, id_map: dict[int, int], chosen: tuple[int, ...]):
        if j == len(pg):
            yield chosen, id_map
            return
        candidates = [start] if j == 0 else range(last + 1, limit)
        for i in candidates:
            for trial in _bind_gate(pg[j], cg[i], id_map):
                yield from extend(j + 1, i, trial, chosen + (i,))

    yield from extend(0, start, {}, ())


def _family_sizes(rule: Rule, c: Circuit, n: int | None) -> list[int]:
    if n is not None or not rule.family:
        return [rule.resolve_n(n)]
    return [k for k in range(rule.min_n, c.max_width + 1) if rule.arity(k) <= c.max_width]


def find_matches(c: Circuit, rule: Rule, side: Side = Side.LHS, n: int | None = None,
                 window: int | None = None, start: int | None = None) -> list[Match]:
    """
    Every embedding of `rule`'s `side` into `c` (or only those anchored at `start`).

    Raises:
        TheoryMismatch: If the rule is not an equation of `c.theory`.
    """
    if c.theory not in rule.theories:
        raise TheoryMismatch(f"{rule.name} is not an equation of {c.theory.value}")
    window = AppConfig.MATCH_WINDOW if window is None else window
    ids = to_id_circuit(c)
    matches: list[Match] = []
    for size in _family_sizes(rule, c, n):
        pattern = side_pattern(rule, side, size)
        if not pattern.gates:
            continue
        span = max(window, len(pattern.gates))
        starts = range(len(c.gates)) if start is None else [start]
        for s in starts:
            if not 0 <= s < len(c.gates):
                continue
            for indices, id_map in _embeddings(ids.gates, pattern, s, span):
                split = _split_skipped(ids.gates, indices)
                if split is None:
                    continue
                constraints = tuple(
                    (expr, ids.gates[i].angle, ANGLE_PERIOD[pattern.gates[j].kind])
                    for j, (i, expr) in enumerate(zip(indices, pattern.exprs))
                    if expr is not None
                )
                params = solve_constraints(constraints)
                if params is None or not _valid(rule, side, params):
                    continue
                matches.append(Match(
                    rule=rule, side=side, n=size, start=indices[0], stop=indices[-1] + 1,
                    indices=indices, id_map=id_map, params=params, constraints=constraints,
                    before=split[0], after=split[1],
                    fingerprint=tuple(c.gates[i] for i in range(indices[0], indices[-1] + 1)),
                ))
    logger.debug(f"{rule.name} {side.value}: {len(matches)} match(es) in {len(c.gates)} gate(s)")
    return matches


def _valid(rule: Rule, side: Side, params: Mapping[str, float]) -> bool:
    if rule.validate is None or side is not Side.LHS or not all(k in params for k in rule.params):
        return True
    try:
        rule.validate(params)
    except BadParameters:
        return False
    return True


def hinted_match(c: Circuit, rule: Rule, side: Side, anchor: int, wires=None, n: int | None = None) -> Match:
    """
    A match of a side without gates: the other side is inserted before gate
    `anchor` on the circuit wires `wires` (positions at the anchor).

    Raises:
        BadParameters: If the anchor or the wires do not fit the circuit.
    """
    if c.theory not in rule.theories:
        raise TheoryMismatch(f"{rule.name} is not an equation of {c.theory.value}")
    n = rule.resolve_n(n)
    arity = rule.arity(n)
    wires = tuple(range(arity)) if wires is None else tuple(wires)
    if not 0 <= anchor <= len(c.gates):
        raise BadParameters(f"anchor {anchor} outside 0..{len(c.gates)}")
    live_before = wire_timeline(c)[0]
    live = live_before[anchor]
    if len(wires) != arity or len(set(wires)) != arity or any(not 0 <= w < len(live) for w in wires):
        raise BadParameters(f"{rule.name} needs {arity} distinct live wire(s) at gate {anchor}, got {list(wires)}")
    return Match(
        rule=rule, side=side, n=n, start=anchor, stop=anchor, indices=(),
        id_map={pin: live[w] for pin, w in enumerate(wires)}, params={}, constraints=(),
    )

"""The axioms of QC, QCiso, QCancilla and QCground, plus the retired rules."""
import logging
import math
from typing import Mapping

import numpy as np

from app.circuits.gates import Theory, phase, h, p, rx, cx, swap, init, free, discard
from app.errors import BadParameters, UnknownRule
from app.rules.schema import Rule, RuleInstance, RuleStatus, instantiate_rule
from app.solvers.angles import canonical_angle
from app.solvers.conversions import kstar_old_from_new
from app.solvers.euler import EulerAngles, euler_xzx, euler_zxz
from app.solvers.kstar import KstarAngles, KstarOldAngles, kstar_lhs_gates, kstar_rhs_gates, solve_kstar
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Catalog")

PI = math.pi
TWO_PI = 2 * math.pi

QC, QCISO, QCANCILLA, QCGROUND = Theory.QC, Theory.QCISO, Theory.QCANCILLA, Theory.QCGROUND
UNITARY_THEORIES = (QC, QCISO, QCANCILLA)
ALL_THEORIES = (QC, QCISO, QCANCILLA, QCGROUND)
INIT_THEORIES = (QCISO, QCANCILLA, QCGROUND)

ALPHAS = ("a1", "a2", "a3")
BETAS = ("b0", "b1", "b2", "b3")
GAMMAS = ("g1", "g2", "g3", "g4")
DELTAS = tuple(f"d{i}" for i in range(1, 9))
OLD_DELTAS = tuple(f"d{i}" for i in range(1, 10))


def wires(k: int):
    return lambda n: k


def _pick(values: Mapping[str, float], names) -> tuple[float, ...]:
    return tuple(values[name] for name in names)


# --- Euler rule ---

def _euler_lhs(v, n):
    a1, a2, a3 = _pick(v, ALPHAS)
    return [rx(a1, 0), p(a2, 0), rx(a3, 0)]


def _euler_rhs(v, n):
    b0, b1, b2, b3 = _pick(v, BETAS)
    return [phase(b0), p(b1, 0), rx(b2, 0), p(b3, 0)]


def _euler_rhs_ground(v, n):
    b1, b2, b3 = _pick(v, BETAS[1:])
    return [p(b1, 0), rx(b2, 0), p(b3, 0)]


def _euler_solve(v):
    u = EulerAngles(0.0, *_pick(v, ALPHAS), form="xzx").matrix()
    return dict(zip(BETAS, euler_zxz(u).as_tuple()))


def _rotations_without_phase(u: np.ndarray, exact_phase: bool) -> dict[str, float]:
    """Rx·P·Rx angles of u when its xzx phase is 0 (or π, absorbed by an Rx period)."""
    e = euler_xzx(u)
    a1, a2, a3 = e.beta1, e.beta2, e.beta3
    if exact_phase and e.beta0 != 0.0:
        if e.beta0 != PI:
            raise BadParameters(f"right-hand side carries phase {e.beta0}; no phase-free left-hand side exists")
        a3 += TWO_PI
    return dict(zip(ALPHAS, (a1, a2, a3)))


def _euler_unsolve(rhs, hints):
    return _rotations_without_phase(EulerAngles(*_pick(rhs, BETAS)).matrix(), exact_phase=True)


def _euler_unsolve_ground(rhs, hints):
    return _rotations_without_phase(EulerAngles(0.0, *_pick(rhs, BETAS[1:])).matrix(), exact_phase=False)


def _euler_canonical(rhs):
    return EulerAngles(*_pick(rhs, BETAS)).violations()


def _euler_canonical_ground(rhs):
    return EulerAngles(0.0, *_pick(rhs, BETAS[1:])).violations()


def _euler_solve_ground(v):
    solved = _euler_solve(v)
    solved.pop("b0")
    return solved


# --- K* rule ---

def _kstar_lhs(v, n):
    return kstar_lhs_gates(_pick(v, GAMMAS), n)


def _kstar_rhs(v, n):
    return kstar_rhs_gates(_pick(v, DELTAS), n)


def _kstar_old_rhs(v, n):
    return kstar_rhs_gates(_pick(v, OLD_DELTAS), n)


def _kstar_solve(v):
    return dict(zip(DELTAS, solve_kstar(_pick(v, GAMMAS)).as_tuple()))


def _kstar_old_solve(v):
    return dict(zip(OLD_DELTAS, kstar_old_from_new(solve_kstar(_pick(v, GAMMAS))).as_tuple()))


def _kstar_unsolve(rhs, hints):
    raise BadParameters("the left-hand angles of K* are not determined by its right-hand side; pass them as params")


def _kstar_canonical(rhs):
    return KstarAngles(*_pick(rhs, DELTAS)).violations()


def _kstar_old_canonical(rhs):
    return KstarOldAngles(*_pick(rhs, OLD_DELTAS)).violations()


def kstar_rule(name: str, theories, family: bool, default_n: int, status=RuleStatus.AXIOM,
               description: str = "") -> Rule:
    return Rule(
        name=name, theories=theories, lhs=_kstar_lhs, rhs=_kstar_rhs, arity=lambda n: n,
        params=GAMMAS, rhs_params=DELTAS, solve=_kstar_solve, unsolve=_kstar_unsolve,
        canonical=_kstar_canonical, family=family, min_n=2, default_n=default_n,
        status=status, description=description,
    )


# --- Global phase ---

def _full_turn(v):
    if canonical_angle(v["phi"]) != 0.0:
        raise BadParameters(f"A needs φ ∈ 2πℤ, got {v['phi']}")


def _draw_full_turn(rng):
    return {"phi": TWO_PI * int(rng.integers(-1, 2))}


# --- Parity gadgets (retired rules) ---
# Each gadget is e^{iθ(1 − Π)/2} for a Pauli product Π: the CNots collect the
# parity on one wire, P(θ) phases it, and H moves a factor into the X basis.

def _gadget_zx(theta):
    return [h(1), cx(0, 1), p(theta, 1), cx(0, 1), h(1)]


def _gadget_xz(theta):
    return [h(0), cx(1, 0), p(theta, 0), cx(1, 0), h(0)]


def _gadget_zxz(theta):
    return [h(1), cx(0, 2), cx(1, 2), p(theta, 2), cx(1, 2), cx(0, 2), h(1)]


AXIOMS = [
    Rule("A", UNITARY_THEORIES, lambda v, n: [phase(v["phi"])], lambda v, n: [], wires(0),
         params=("phi",), validate=_full_turn, sampler=_draw_full_turn,
         description="s(0) = s(2π) = empty"),
    Rule("B", UNITARY_THEORIES, lambda v, n: [phase(v["phi1"]), phase(v["phi2"])],
         lambda v, n: [phase(v["phi1"] + v["phi2"])], wires(0), params=("phi1", "phi2"),
         description="s(φ1) s(φ2) = s(φ1+φ2)"),
    Rule("C", ALL_THEORIES, lambda v, n: [h(0), h(0)], lambda v, n: [], wires(1),
         description="HH = id"),
    Rule("D", ALL_THEORIES, lambda v, n: [p(0.0, 0)], lambda v, n: [], wires(1),
         description="P(0) = id"),
    Rule("E", ALL_THEORIES, lambda v, n: [cx(0, 1), cx(1, 0), cx(0, 1)], lambda v, n: [swap(0, 1)], wires(2),
         description="three alternating CNots = SWAP"),
    Rule("F", ALL_THEORIES, lambda v, n: [cx(0, 2), cx(1, 2)], lambda v, n: [cx(0, 1), cx(1, 2), cx(0, 1)],
         wires(3), description="CNot parity on a shared target"),
    Rule("G", ALL_THEORIES, lambda v, n: [cx(0, 1), p(v["phi"], 0), cx(0, 1)], lambda v, n: [p(v["phi"], 0)],
         wires(2), params=("phi",), description="P on the control commutes through a CNot pair"),
    Rule("H", ALL_THEORIES, lambda v, n: [h(1), cx(0, 1), h(1)], lambda v, n: [h(0), cx(1, 0), h(0)],
         wires(2), description="Hadamard-conjugated CNot is symmetric"),
    Rule("I", ALL_THEORIES, lambda v, n: [h(0)], lambda v, n: [p(PI / 2, 0), rx(PI / 2, 0), p(PI / 2, 0)],
         wires(1), description="H = P(π/2) Rx(π/2) P(π/2)"),
    Rule("J", UNITARY_THEORIES, _euler_lhs, _euler_rhs, wires(1), params=ALPHAS, rhs_params=BETAS,
         solve=_euler_solve, unsolve=_euler_unsolve, canonical=_euler_canonical,
         description="Euler: Rx P Rx = s P Rx P with canonical angles"),
    Rule("J'", (QCGROUND,), _euler_lhs, _euler_rhs_ground, wires(1), params=ALPHAS, rhs_params=BETAS[1:],
         solve=_euler_solve_ground, unsolve=_euler_unsolve_ground, canonical=_euler_canonical_ground,
         description="Euler without the global phase"),
    kstar_rule("K*", (QC, QCISO), family=True, default_n=2,
               description="multi-controlled generalized Euler rule"),
    kstar_rule("K2", (QCANCILLA, QCGROUND), family=False, default_n=2,
               description="the two-qubit instance of K*"),
    Rule("L", INIT_THEORIES, lambda v, n: [init(0), p(v["phi"], 0)], lambda v, n: [init(0)], wires(0),
         params=("phi",), description="a phase on a fresh |0⟩ vanishes"),
    Rule("M", INIT_THEORIES, lambda v, n: [init(1), cx(1, 0)], lambda v, n: [init(1)], wires(1),
         description="a CNot controlled by a fresh |0⟩ vanishes"),
    Rule("N", (QCANCILLA,), lambda v, n: [init(0), free(0)], lambda v, n: [], wires(0),
         description="creating then releasing an ancilla is the empty circuit"),
    Rule("O", (QCGROUND,), lambda v, n: [h(0), discard(0)], lambda v, n: [discard(0)], wires(1),
         description="H before a discard vanishes"),
    Rule("P", (QCGROUND,), lambda v, n: [p(v["phi"], 0), discard(0)], lambda v, n: [discard(0)], wires(1),
         params=("phi",), description="P before a discard vanishes"),
    Rule("Q", (QCGROUND,), lambda v, n: [init(0), discard(0)], lambda v, n: [], wires(0),
         description="discarding a fresh qubit is the empty circuit"),
    Rule("R", (QCGROUND,), lambda v, n: [cx(0, 1), discard(0), discard(0)],
         lambda v, n: [discard(0), discard(0)], wires(2),
         description="a CNot before discarding both wires vanishes"),
]

RETIRED = [
    Rule("n", (QC,), lambda v, n: _gadget_zx(v["theta"]) + _gadget_xz(v["theta2"]),
         lambda v, n: _gadget_xz(v["theta2"]) + _gadget_zx(v["theta"]), wires(2), params=("theta", "theta2"),
         status=RuleStatus.RETIRED, description="the Z⊗X and X⊗Z parity gadgets commute"),
    Rule("o", (QC,), lambda v, n: _gadget_zxz(v["theta"]) + _gadget_xz(v["theta2"]),
         lambda v, n: _gadget_xz(v["theta2"]) + _gadget_zxz(v["theta"]), wires(3), params=("theta", "theta2"),
         status=RuleStatus.RETIRED, description="the Z⊗X⊗Z and X⊗Z parity gadgets commute"),
    Rule("K*old", (QC,), _kstar_lhs, _kstar_old_rhs, lambda n: n, params=GAMMAS, rhs_params=OLD_DELTAS,
         solve=_kstar_old_solve, unsolve=_kstar_unsolve, canonical=_kstar_old_canonical,
         family=True, min_n=2, default_n=2, status=RuleStatus.RETIRED,
         description="K* with a trailing P(δ9) and δ4 in [0, 2π)"),
]

ALIASES = {
    "J′": "J'", "Jprime": "J'",
    "K²": "K2", "Kstar": "K*", "K³": "K3", "Kstarold": "K*old",
}


def _build_catalog() -> dict[str, Rule]:
    from app.rules.identities import IDENTITIES

    catalog: dict[str, Rule] = {}
    k3 = kstar_rule("K3", (QCANCILLA, QC), family=False, default_n=3, status=RuleStatus.IDENTITY,
                    description="K* on three wires, derivable from K2 with ancillae")
    for rule in AXIOMS + RETIRED + IDENTITIES + [k3]:
        if rule.name in catalog:
            raise ValueError(f"duplicate rule name {rule.name}")
        catalog[rule.name] = rule
    return catalog


CATALOG: dict[str, Rule] = _build_catalog()


def get_rule(name: str) -> Rule:
    """
    Raises:
        UnknownRule: If no rule is registered under `name` or one of its aliases.
    """
    rule = CATALOG.get(ALIASES.get(name, name))
    if rule is None:
        raise UnknownRule(f"unknown rule {name!r}")
    return rule


def rules_for(theory: Theory, statuses=(RuleStatus.AXIOM,)) -> list[Rule]:
    theory = Theory(theory)
    return [r for r in CATALOG.values() if theory in r.theories and r.status in statuses]


def instantiate(name: str, params: Mapping[str, float] | None = None, n: int | None = None,
                theory: Theory | None = None, rng: np.random.Generator | None = None) -> RuleInstance:
    return instantiate_rule(get_rule(name), params, n, theory, rng)

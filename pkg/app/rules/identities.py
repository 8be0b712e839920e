"""Derived identities: equations provable from the axioms, checked semantically."""
import math

from app.circuits.gates import (
    Gate, GateKind, Theory, phase, h, p, rx, x, z, cx, swap, toffoli, fredkin, init, free, pos, neg,
)
from app.circuits.shortcuts import expand_gate
from app.errors import BadParameters
from app.rules.schema import Rule, RuleStatus
from app.solvers.euler import EulerAngles, euler_xzx, euler_zxz

PI = math.pi
TWO_PI = 2 * math.pi

QC, QCISO, QCANCILLA = Theory.QC, Theory.QCISO, Theory.QCANCILLA
UNITARY = (QC, QCISO, QCANCILLA)
ANCILLA = (QCISO, QCANCILLA)


def _fixed(k: int):
    return lambda n: k


def identity(name, lhs, rhs, width, params=(), theories=UNITARY, description="") -> Rule:
    return Rule(name, theories, lhs, rhs, _fixed(width), params=params, default_n=width,
                status=RuleStatus.IDENTITY, description=description)


def family(name, lhs, rhs, params=(), min_n=2, default_n=3, theories=UNITARY, description="") -> Rule:
    return Rule(name, theories, lhs, rhs, lambda n: n, params=params, family=True,
                min_n=min_n, default_n=default_n, status=RuleStatus.IDENTITY, description=description)


def _controls(n: int) -> tuple[tuple[int, bool], ...]:
    """Positive controls on every wire but the last."""
    return pos(*range(n - 1))


# --- Inverse Euler ---

_XZX = ("b0", "b1", "b2", "b3")
_ZXZ = ("a1", "a2", "a3")


def _inverse_euler_solve(v):
    u = EulerAngles(0.0, v["a1"], v["a2"], v["a3"]).matrix()
    return dict(zip(_XZX, euler_xzx(u).as_tuple()))


def _inverse_euler_unsolve(rhs, hints):
    u = EulerAngles(*(rhs[k] for k in _XZX), form="xzx").matrix()
    e = euler_zxz(u)
    a1, a2, a3 = e.beta1, e.beta2, e.beta3
    if e.beta0 == PI:
        a2 += TWO_PI
    elif e.beta0 != 0.0:
        raise BadParameters(f"right-hand side carries phase {e.beta0}; no phase-free left-hand side exists")
    return dict(zip(_ZXZ, (a1, a2, a3)))


def _inverse_euler_canonical(rhs):
    return EulerAngles(*(rhs[k] for k in _XZX), form="xzx").violations()


INVERSE_EULER = Rule(
    "inverseEuler", UNITARY,
    lambda v, n: [p(v["a1"], 0), rx(v["a2"], 0), p(v["a3"], 0)],
    lambda v, n: [phase(v["b0"]), rx(v["b1"], 0), p(v["b2"], 0), rx(v["b3"], 0)],
    _fixed(1), params=_ZXZ, rhs_params=_XZX, solve=_inverse_euler_solve,
    unsolve=_inverse_euler_unsolve, canonical=_inverse_euler_canonical,
    status=RuleStatus.IDENTITY, description="P Rx P = s Rx P Rx with canonical angles",
)


# --- Multi-controlled helpers ---

def _mcp_swap_rhs(kind):
    def build(v, n):
        rest = pos(*range(n - 2))
        return [Gate(kind, (n - 2,), rest + pos(n - 1), v["phi"])]
    return build


def _mcp_swap_lhs(kind):
    def build(v, n):
        rest = pos(*range(n - 2))
        return [swap(n - 2, n - 1), Gate(kind, (n - 1,), rest + pos(n - 2), v["phi"]), swap(n - 2, n - 1)]
    return build


def _merge_controls(kind):
    def build(v, n):
        rest = pos(*range(n - 2))
        return [Gate(kind, (n - 1,), rest + pos(n - 2), v["phi"]),
                Gate(kind, (n - 1,), rest + neg(n - 2), v["phi"])]
    return build


def _drop_control(kind):
    def build(v, n):
        return [Gate(kind, (n - 1,), pos(*range(n - 2)), v["phi"])]
    return build


def _mc(kind, angle_key=None, angle=None):
    def build(v, n):
        value = v[angle_key] if angle_key else angle
        return [Gate(kind, (n - 1,), _controls(n), value)]
    return build


def _mc_sum(kind):
    def build(v, n):
        return [Gate(kind, (n - 1,), _controls(n), v["phi1"]), Gate(kind, (n - 1,), _controls(n), v["phi2"])]
    return build


def _mc_total(kind):
    def build(v, n):
        return [Gate(kind, (n - 1,), _controls(n), v["phi1"] + v["phi2"])]
    return build


def _expanded_mcp(alt: bool):
    def build(v, n):
        return expand_gate(p(v["phi"], n - 1, _controls(n)), alt_mcp=alt)
    return build


# --- Ancilla helpers: the ancilla is created below the n input wires ---

def _ancilla_gate(kind, positive: bool, with_angle: bool):
    def lhs(v, n):
        anc = n
        ctrl = _controls(n) + ((anc, positive),)
        return [init(anc), Gate(kind, (n - 1,), ctrl, v["phi"] if with_angle else 0.0)]

    def rhs(v, n):
        anc = n
        if positive:
            return [init(anc)]
        return [init(anc), Gate(kind, (n - 1,), _controls(n), v["phi"] if with_angle else 0.0)]
    return lhs, rhs


def _alt_def(kind):
    """Ancilla-mediated multi-controlled gate: the first two controls are ANDed into the ancilla."""
    def lhs(v, n):
        anc = n
        return [init(anc), Gate(kind, (n - 1,), _controls(n), v["phi"]), free(anc)]

    def rhs(v, n):
        anc = n
        ctrl = pos(anc) + pos(*range(2, n - 1))
        return [init(anc), toffoli(0, 1, anc), Gate(kind, (n - 1,), ctrl, v["phi"]),
                toffoli(0, 1, anc), free(anc)]
    return lhs, rhs


_anc_pos_p = _ancilla_gate(GateKind.P, True, True)
_anc_neg_p = _ancilla_gate(GateKind.P, False, True)
_anc_pos_rx = _ancilla_gate(GateKind.RX, True, True)
_anc_neg_rx = _ancilla_gate(GateKind.RX, False, True)
_anc_pos_x = _ancilla_gate(GateKind.X, True, False)
_anc_neg_x = _ancilla_gate(GateKind.X, False, False)
_p_alt = _alt_def(GateKind.P)
_rx_alt = _alt_def(GateKind.RX)


def _mixed_colour_phases(first: bool):
    """Two multi-controlled P gates with targets at opposite ends and controls of both colours."""
    def build(v, n):
        top = p(v["phi1"], 0, neg(1) + pos(*range(2, n)))
        bottom = p(v["phi2"], n - 1, pos(0) + neg(*range(1, n - 1)))
        return [top, bottom] if first else [bottom, top]
    return build


def _pi_to_control(v, n):
    return [rx(v["theta"], n - 1, _controls(n)), p(PI, n - 2, pos(*range(n - 2)))]

PHI = ("phi",)
PHIS = ("phi1", "phi2")


IDENTITIES: list[Rule] = [
    # Single-wire and CNot identities
    identity("XX", lambda v, n: [x(0), x(0)], lambda v, n: [], 1),
    identity("ZZ", lambda v, n: [z(0), z(0)], lambda v, n: [], 1),
    identity("RX0", lambda v, n: [rx(0.0, 0)], lambda v, n: [], 1),
    identity("Zminuspi", lambda v, n: [p(-PI, 0)], lambda v, n: [z(0)], 1, description="P(−π) = Z"),
    identity("Paddition", lambda v, n: [p(v["phi1"], 0), p(v["phi2"], 0)],
             lambda v, n: [p(v["phi1"] + v["phi2"], 0)], 1, PHIS),
    identity("RXaddition", lambda v, n: [rx(v["phi1"], 0), rx(v["phi2"], 0)],
             lambda v, n: [rx(v["phi1"] + v["phi2"], 0)], 1, PHIS),
    identity("CNOTCNOT", lambda v, n: [cx(0, 1), cx(0, 1)], lambda v, n: [], 2),
    identity("CNOTHH", lambda v, n: [h(0), h(1), cx(0, 1), h(0), h(1)], lambda v, n: [cx(1, 0)], 2),
    identity("CNOTSWAP", lambda v, n: [swap(0, 1), cx(1, 0), swap(0, 1)], lambda v, n: [cx(0, 1)], 2),
    identity("PcommutCNOT", lambda v, n: [p(v["phi"], 0), cx(0, 1)], lambda v, n: [cx(0, 1), p(v["phi"], 0)],
             2, PHI),
    identity("RXcommutCNOT", lambda v, n: [rx(v["phi"], 1), cx(0, 1)], lambda v, n: [cx(0, 1), rx(v["phi"], 1)],
             2, PHI),
    identity("XcommutCNOT", lambda v, n: [x(1), cx(0, 1)], lambda v, n: [cx(0, 1), x(1)], 2),
    identity("CNOTXX", lambda v, n: [x(0), cx(0, 1)], lambda v, n: [cx(0, 1), x(0), x(1)], 2),
    identity("CNOTZZ", lambda v, n: [z(1), cx(0, 1)], lambda v, n: [cx(0, 1), z(0), z(1)], 2),
    identity("CNOTscontrolcommut", lambda v, n: [cx(0, 1), cx(0, 2)], lambda v, n: [cx(0, 2), cx(0, 1)], 3),
    identity("CNOTstargetcommut", lambda v, n: [cx(0, 2), cx(1, 2)], lambda v, n: [cx(1, 2), cx(0, 2)], 3),
    identity("3CNOTscontrol", lambda v, n: [cx(1, 2), cx(0, 1), cx(1, 2)], lambda v, n: [cx(0, 1), cx(0, 2)], 3),
    # Phase and rotation identities
    identity("XPX", lambda v, n: [x(0), p(v["phi"], 0), x(0)], lambda v, n: [phase(v["phi"]), p(-v["phi"], 0)],
             1, PHI, description="X P(φ) X = s(φ) P(−φ)"),
    identity("ZRXZ", lambda v, n: [z(0), rx(v["phi"], 0), z(0)], lambda v, n: [rx(-v["phi"], 0)], 1, PHI),
    identity("Pphasegadget", lambda v, n: [cx(0, 1), p(v["phi"], 1), cx(0, 1)],
             lambda v, n: [p(v["phi"], 0), p(v["phi"], 1), p(-2 * v["phi"], 1, pos(0))], 2, PHI),
    identity("RXphasegadget", lambda v, n: [cx(0, 1), rx(v["phi"], 0), cx(0, 1)],
             lambda v, n: [phase(-v["phi"] / 2), h(0), h(1), cx(0, 1), p(v["phi"], 1), cx(0, 1), h(0), h(1)],
             2, PHI),
    INVERSE_EULER,
    identity("HeulerRXPRX", lambda v, n: [h(0)],
             lambda v, n: [phase(PI / 4), rx(PI / 2, 0), p(PI / 2, 0), rx(PI / 2, 0)], 1,
             description="H = s(π/4) Rx(π/2) P(π/2) Rx(π/2)"),
    # Multi-controlled identities; controls on wires 0..n−2, target n−1
    family("mctrlPaddition", _mc_sum(GateKind.P), _mc_total(GateKind.P), PHIS, min_n=1),
    family("mctrlRXaddition", _mc_sum(GateKind.RX), _mc_total(GateKind.RX), PHIS, min_n=1),
    identity("TOFTOF", lambda v, n: [toffoli(0, 1, 2), toffoli(0, 1, 2)], lambda v, n: [], 3),
    family("mctrlPop", _merge_controls(GateKind.P), _drop_control(GateKind.P), PHI,
           description="a positive and a negative control on the same wire cancel"),
    family("mctrlRXop", _merge_controls(GateKind.RX), _drop_control(GateKind.RX), PHI),
    family("mctrlPlift", _mc(GateKind.P, "phi"), _mcp_swap_rhs(GateKind.P), PHI,
           description="the target of a multi-controlled P can trade places with a control"),
    family("mctrlPSWAP", _mcp_swap_lhs(GateKind.P), _mcp_swap_rhs(GateKind.P), PHI),
    family("mctrlRXSWAP", _mcp_swap_lhs(GateKind.RX), _mcp_swap_rhs(GateKind.RX), PHI),
    family("mctrlPinducdef", _expanded_mcp(False), _expanded_mcp(True), PHI,
           description="the two inductive definitions of the multi-controlled P agree"),
    family("mctrlzeroid", _mc(GateKind.P, angle=0.0), lambda v, n: [], min_n=1),
    family("mctrlRXzeroid", _mc(GateKind.RX, angle=0.0), lambda v, n: [], min_n=1),
    family("mctrlP2piperiodic", _mc(GateKind.P, angle=TWO_PI), lambda v, n: [], min_n=1),
    family("mctrlRX2piP", _mc(GateKind.RX, angle=TWO_PI),
           lambda v, n: [p(PI, n - 2, pos(*range(n - 2)))],
           description="a multi-controlled Rx(2π) is a P(π) on its last control"),
    family("commctrlphaseenhaut",
           lambda v, n: [p(v["phi"], n - 2, pos(*range(n - 2))), rx(v["theta"], n - 1, _controls(n))],
           lambda v, n: [rx(v["theta"], n - 1, _controls(n)), p(v["phi"], n - 2, pos(*range(n - 2)))],
           ("phi", "theta"), description="a P on the controls commutes with a multi-controlled Rx"),
    family("Palwayscommute", _mixed_colour_phases(True), _mixed_colour_phases(False), PHIS,
           description="multi-controlled P gates commute whatever their targets and control colours"),
    family("passagepihb", lambda v, n: [rx(v["theta"] + TWO_PI, n - 1, _controls(n))], _pi_to_control,
           ("theta",), description="the π of a multi-controlled Rx(θ + 2π) moves onto the last control"),
    # Ancilla identities; the ancilla is the fresh wire n
    identity("ancillaCNOTpos", lambda v, n: [init(0), cx(0, 1)], lambda v, n: [init(0)], 1, theories=ANCILLA),
    family("ancillaTOFneg", _anc_neg_x[0], _anc_neg_x[1], min_n=2, default_n=2, theories=ANCILLA),
    family("ancillaTOFpos", _anc_pos_x[0], _anc_pos_x[1], min_n=2, default_n=2, theories=ANCILLA),
    family("ancillamctrlPneg", _anc_neg_p[0], _anc_neg_p[1], PHI, min_n=1, theories=ANCILLA),
    family("ancillamctrlRXneg", _anc_neg_rx[0], _anc_neg_rx[1], PHI, min_n=1, theories=ANCILLA),
    family("ancillamctrlPpos", _anc_pos_p[0], _anc_pos_p[1], PHI, min_n=1, theories=ANCILLA),
    family("ancillamctrlRXpos", _anc_pos_rx[0], _anc_pos_rx[1], PHI, min_n=1, theories=ANCILLA),
    # Ancilla-based and Fredkin identities
    identity("ctrctrlPdefTOF", lambda v, n: [p(v["phi"], 2, pos(0, 1))],
             lambda v, n: [p(v["phi"] / 2, 1, pos(0)), p(v["phi"] / 2, 2), toffoli(0, 1, 2),
                           p(-v["phi"] / 2, 2), toffoli(0, 1, 2)], 3, PHI),
    identity("ctrctrlctrlPdefTOF", lambda v, n: [p(v["phi"], 3, pos(0, 1, 2))],
             lambda v, n: [p(v["phi"] / 2, 3, pos(0, 1)), p(v["phi"] / 2, 3, pos(2)), toffoli(0, 1, 2),
                           p(-v["phi"] / 2, 3, pos(2)), toffoli(0, 1, 2)], 4, PHI),
    identity("TOFPTOF", lambda v, n: [toffoli(0, 1, 2), p(v["phi"], 2), toffoli(0, 1, 2)],
             lambda v, n: [p(v["phi"], 1, ((0, True), (2, False))), p(v["phi"], 2),
                           p(-v["phi"], 1, pos(0, 2))], 3, PHI),
    identity("ctrlPinit", lambda v, n: [init(2), toffoli(0, 1, 2), p(v["phi"], 2), toffoli(0, 1, 2), free(2)],
             lambda v, n: [p(v["phi"], 1, pos(0))], 2, PHI, theories=(QCANCILLA,),
             description="a controlled P through an ancilla holding the AND of two wires"),
    family("Paltdef", _p_alt[0], _p_alt[1], PHI, min_n=3, default_n=4, theories=(QCANCILLA,)),
    family("RXaltdef", _rx_alt[0], _rx_alt[1], PHI, min_n=3, default_n=4, theories=(QCANCILLA,)),
    identity("multi2", lambda v, n: [p(v["phi"], 2, pos(0, 1))],
             lambda v, n: [init(3), toffoli(0, 1, 3), p(v["phi"], 2, pos(3)), toffoli(0, 1, 3), free(3)],
             3, PHI, theories=(QCANCILLA,),
             description="a doubly controlled P rebuilt on a freshly created ancilla"),
    identity("PthroughFredkin", lambda v, n: [fredkin(0, 1, 2), p(v["phi"], 1), fredkin(0, 1, 2)],
             lambda v, n: [p(v["phi"], 1, neg(0)), p(v["phi"], 2, pos(0))], 3, PHI),
    identity("ctrlPthroughFredkin",
             lambda v, n: [fredkin(0, 1, 2), p(v["phi"], 1, pos(3)), fredkin(0, 1, 2)],
             lambda v, n: [p(v["phi"], 1, ((3, True), (0, False))), p(v["phi"], 2, pos(3, 0))], 4, PHI),
    identity("ctrlRXthroughFredkin",
             lambda v, n: [fredkin(0, 1, 2), rx(v["phi"], 1, pos(3)), fredkin(0, 1, 2)],
             lambda v, n: [rx(v["phi"], 1, ((3, True), (0, False))), rx(v["phi"], 2, pos(3, 0))], 4, PHI),
    identity("HHTOFHH", lambda v, n: [h(2), toffoli(0, 1, 2), h(2)], lambda v, n: [h(1), toffoli(0, 2, 1), h(1)], 3),
    identity("HHFredkinFHH", lambda v, n: [h(1), h(2), fredkin(0, 1, 2), h(1), h(2)],
             lambda v, n: [fredkin(0, 1, 2)], 3),
    identity("initTOF", lambda v, n: [init(3), toffoli(0, 1, 3), toffoli(0, 1, 2)],
             lambda v, n: [init(3), toffoli(0, 1, 3), cx(3, 2)], 3, theories=ANCILLA,
             description="once an ancilla holds the AND of two wires a CNot from it replaces their Toffoli"),
    identity("K1", lambda v, n: [cx(0, 1), toffoli(1, 2, 3), cx(0, 1)],
             lambda v, n: [toffoli(1, 2, 3), toffoli(0, 2, 3)], 4),
    identity("3tofs2cnots", lambda v, n: [toffoli(0, 1, 2), toffoli(0, 2, 1), toffoli(0, 1, 2)],
             lambda v, n: [cx(1, 2), toffoli(0, 2, 1), cx(1, 2)], 3),
    identity("wbTOF", lambda v, n: [x(2, neg(0) + pos(1))], lambda v, n: [toffoli(0, 1, 2), cx(1, 2)], 3,
             description="a Toffoli with one negative control is a CNot undone by the plain Toffoli"),
    identity("5tofs",
             lambda v, n: [toffoli(0, 1, 2), toffoli(0, 2, 1), toffoli(0, 1, 2), toffoli(0, 2, 1), toffoli(0, 1, 2)],
             lambda v, n: [toffoli(0, 2, 1)], 3),
    identity("TOFFredkin", lambda v, n: [fredkin(0, 1, 2), toffoli(0, 1, 3), fredkin(0, 1, 2)],
             lambda v, n: [toffoli(0, 2, 3)], 4, description="a Fredkin relocates a Toffoli sharing its control"),
    identity("wFredkin", lambda v, n: [swap(1, 2, neg(0))], lambda v, n: [fredkin(0, 1, 2), swap(1, 2)], 3),
    identity("wCZ-Z", lambda v, n: [p(PI, 1, neg(0))], lambda v, n: [z(1), p(PI, 1, pos(0))], 2),
    identity("ctrlPphasegadget", lambda v, n: [cx(1, 2), p(v["phi"], 2, pos(0)), cx(1, 2)],
             lambda v, n: [cx(2, 1), p(v["phi"], 1, pos(0)), cx(2, 1)], 3, PHI,
             description="a controlled phase gadget is symmetric in its two wires"),
    identity("wCCZ-CZ", lambda v, n: [p(PI, 2, neg(0) + pos(1))],
             lambda v, n: [p(PI, 2, pos(1)), p(PI, 2, pos(0, 1))], 3),
    identity("wCCRX-CRX", lambda v, n: [rx(v["phi"], 2, neg(0) + pos(1))],
             lambda v, n: [rx(v["phi"], 2, pos(1)), rx(-v["phi"], 2, pos(0, 1))], 3, PHI),
    identity("FredkinwbTOF", lambda v, n: [fredkin(0, 1, 2)],
             lambda v, n: [cx(1, 2), toffoli(0, 2, 1), cx(1, 2)], 3,
             description="Fredkin with the Toffoli controlled by the second swapped wire"),
]

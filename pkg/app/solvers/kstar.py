"""
Angle solver for the multi-controlled generalized Euler rule.

Both sides act on the last two wires a = n−2 and b = n−1; every gate is also
positively controlled by wires 0..n−3. In circuit order:

  left:   Rx_a(γ1)[b] · P_b(γ2)[a] · Rx_b(γ3)[a] · Rx_a(γ4)[b]
  right:  P_b(δ1)[a] · P_b(δ2) · Rx_b(δ3)[a] · Rx_a(δ4)[b] · P_b(δ5)[a]
          · Rx_b(δ6)[a] · P_b(δ7)[a] · P_a(δ8)

where G_t(θ)[c] is G on wire t controlled by wire c. The legacy right-hand side
appends P_b(δ9).
"""
import cmath
import logging
import math
from dataclasses import dataclass, fields

import numpy as np

from app.circuits.circuit import Circuit
from app.circuits.gates import Gate, Theory, p, rx
from app.config import AppConfig
from app.errors import InvalidInput, SolveFailure
from app.semantics.evaluator import eval_unitary
from app.solvers.angles import canonical_angle, is_special, TWO_PI, FOUR_PI
from app.solvers.euler import euler_zxz
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Kstar")

PI = math.pi


@dataclass(frozen=True)
class KstarAngles:
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0
    d4: float = 0.0
    d5: float = 0.0
    d6: float = 0.0
    d7: float = 0.0
    d8: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def violations(self) -> list[str]:
        d1, d2, d3, d4, d5, d6, d7, d8 = self.as_tuple()
        out = []
        for i, v in ((1, d1), (2, d2), (5, d5)):
            if not 0 <= v < PI:
                out.append(f"δ{i} must lie in [0, π)")
        for i, v in ((3, d3), (6, d6), (7, d7), (8, d8)):
            if not 0 <= v < TWO_PI:
                out.append(f"δ{i} must lie in [0, 2π)")
        if not 0 <= d4 < FOUR_PI:
            out.append("δ4 must lie in [0, 4π)")
        if is_special(d3, (0.0,)) and not is_special(d6, (0.0,)) and d2 != 0:
            out.append("δ3 = 0 and δ6 ≠ 0 require δ2 = 0")
        if is_special(d3, (PI,)) and d1 != 0:
            out.append("δ3 = π requires δ1 = 0")
        if is_special(d4, (0.0, TWO_PI)) and (d1 != 0 or d3 != 0):
            out.append("δ4 ∈ {0, 2π} requires δ1 = δ3 = 0")
        # With δ3 = δ6 = 0 the |01⟩ row phase e^{i(δ1+δ2)} has nowhere else to go.
        free_phase = is_special(d3, (0.0,)) and is_special(d6, (0.0,))
        if is_special(d4, (PI, 3 * PI)) and d2 != 0 and not free_phase:
            out.append("δ4 ∈ {π, 3π} requires δ2 = 0")
        if is_special(d4, (PI, 3 * PI)) and is_special(d3, (0.0,)) and d1 != 0:
            out.append("δ4 ∈ {π, 3π} and δ3 = 0 require δ1 = 0")
        if is_special(d6, (0.0, PI)) and d5 != 0:
            out.append("δ6 ∈ {0, π} requires δ5 = 0")
        return out

    @property
    def is_canonical(self) -> bool:
        return not self.violations()


@dataclass(frozen=True)
class KstarOldAngles:
    d1: float = 0.0
    d2: float = 0.0
    d3: float = 0.0
    d4: float = 0.0
    d5: float = 0.0
    d6: float = 0.0
    d7: float = 0.0
    d8: float = 0.0
    d9: float = 0.0

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(getattr(self, f.name) for f in fields(self))

    def violations(self) -> list[str]:
        d1, d2, d3, d4, d5, d6, d7, d8, d9 = self.as_tuple()
        out = []
        for i, v in ((1, d1), (2, d2), (5, d5)):
            if not 0 <= v < PI:
                out.append(f"δ{i} must lie in [0, π)")
        for i, v in ((3, d3), (4, d4), (6, d6), (7, d7), (8, d8), (9, d9)):
            if not 0 <= v < TWO_PI:
                out.append(f"δ{i} must lie in [0, 2π)")
        if is_special(d3, (0.0,)) and d2 != 0:
            out.append("δ3 = 0 requires δ2 = 0")
        if is_special(d3, (PI,)) and d1 != 0:
            out.append("δ3 = π requires δ1 = 0")
        if is_special(d4, (0.0,)) and (d1 != 0 or d2 != 0 or d3 != 0):
            out.append("δ4 = 0 requires δ1 = δ2 = δ3 = 0")
        if is_special(d4, (PI,)) and d2 != 0:
            out.append("δ4 = π requires δ2 = 0")
        if is_special(d4, (PI,)) and is_special(d3, (0.0,)) and d1 != 0:
            out.append("δ4 = π and δ3 = 0 require δ1 = 0")
        if is_special(d6, (0.0, PI)) and d5 != 0:
            out.append("δ6 ∈ {0, π} requires δ5 = 0")
        return out

    @property
    def is_canonical(self) -> bool:
        return not self.violations()


def _wires(n: int) -> tuple[int, int, list[int]]:
    if n < 2:
        raise ValueError(f"the rule needs at least 2 wires, got {n}")
    return n - 2, n - 1, list(range(n - 2))


def _ctrl(rest: list[int], *extra: int) -> tuple[tuple[int, bool], ...]:
    return tuple((w, True) for w in rest + list(extra))


def kstar_lhs_gates(gammas, n: int = 2) -> list[Gate]:
    g1, g2, g3, g4 = gammas
    a, b, rest = _wires(n)
    return [
        rx(g1, a, _ctrl(rest, b)),
        p(g2, b, _ctrl(rest, a)),
        rx(g3, b, _ctrl(rest, a)),
        rx(g4, a, _ctrl(rest, b)),
    ]


def kstar_rhs_gates(deltas, n: int = 2) -> list[Gate]:
    d = list(deltas)
    a, b, rest = _wires(n)
    gates = [
        p(d[0], b, _ctrl(rest, a)),
        p(d[1], b, _ctrl(rest)),
        rx(d[2], b, _ctrl(rest, a)),
        rx(d[3], a, _ctrl(rest, b)),
        p(d[4], b, _ctrl(rest, a)),
        rx(d[5], b, _ctrl(rest, a)),
        p(d[6], b, _ctrl(rest, a)),
        p(d[7], a, _ctrl(rest)),
    ]
    if len(d) == 9:
        gates.append(p(d[8], b, _ctrl(rest)))
    return gates


def kstar_lhs(gammas, n: int = 2) -> Circuit:
    return Circuit(Theory.QC, n, tuple(kstar_lhs_gates(gammas, n)))


def kstar_rhs(deltas, n: int = 2) -> Circuit:
    if isinstance(deltas, (KstarAngles, KstarOldAngles)):
        deltas = deltas.as_tuple()
    return Circuit(Theory.QC, n, tuple(kstar_rhs_gates(deltas, n)))


def _split_sign(z: complex, eps: float) -> tuple[float, float]:
    """
    Writes z = r·e^{iφ} with φ ∈ [0, π) and r real (possibly negative).
    Returns (r, φ); φ = 0 when z is negligible.
    """
    if abs(z) <= eps:
        return 0.0, 0.0
    phi = canonical_angle(cmath.phase(z))
    r = abs(z)
    if phi >= PI:
        phi = canonical_angle(phi - PI)
        r = -r
    return r, phi


def _analytic(w: np.ndarray) -> tuple[float, ...]:
    eps = AppConfig.ANGLE_SNAP
    r1, r2, r3 = w[1, 1], w[1, 2].real, w[1, 3]
    # Row |01⟩ reads (0, c4·e^{iδ2}, −s3·s4, −i·s4·c3·e^{i(δ1+δ2)}).
    c4, d2 = _split_sign(r1, eps)
    s4_mag = math.sqrt(max(0.0, 1.0 - c4 * c4))
    if s4_mag <= eps:
        d1 = d3 = 0.0
        d4 = 0.0 if c4 > 0 else TWO_PI
        return d1, d2, d3, d4
    if abs(r2) > eps:
        s4 = -math.copysign(s4_mag, r2)
        s3 = -r2 / s4
        q = r3 * cmath.exp(-1j * d2) / (-1j * s4)
        c3, d1 = _split_sign(q, eps)
        if c3 == 0.0:
            d3 = PI
        else:
            d3 = 2 * math.atan2(s3, c3)
    elif abs(c4) > eps:
        d3 = 0.0
        t = 1j * r3 * cmath.exp(-1j * d2)
        s4, d1 = _split_sign(t, eps)
        if s4 == 0.0:
            s4 = s4_mag
    else:
        # Row |01⟩ is (0, 0, 0, −i·s4·e^{i(δ1+δ2)}) with δ1 pinned to 0, so δ2 carries the phase.
        d1 = d3 = 0.0
        s4, d2 = _split_sign(1j * r3, eps)
    d4 = 2 * math.atan2(s4, c4)
    return (canonical_angle(d1), canonical_angle(d2), canonical_angle(d3), canonical_angle(d4, FOUR_PI))


def _two_qubit(gates: list[Gate]) -> np.ndarray:
    return eval_unitary(Circuit(Theory.QC, 2, tuple(gates)))


def _complete(w: np.ndarray, first: tuple[float, ...]) -> KstarAngles:
    """Given δ1..δ4, the remaining gates act on the a = 1 block only."""
    d1, d2, d3, d4 = first
    head = _two_qubit(kstar_rhs_gates((d1, d2, d3, d4, 0, 0, 0, 0))[:4])
    tail = w @ head.conj().T
    block = tail[np.ix_([2, 3], [2, 3])]
    # Project onto the nearest unitary so float noise never trips the Euler check.
    u, _, vh = np.linalg.svd(block)
    e = euler_zxz(u @ vh)
    return KstarAngles(d1, d2, d3, d4, e.beta1, e.beta2, e.beta3, e.beta0)


def _residual(w: np.ndarray, deltas) -> float:
    return float(np.max(np.abs(_two_qubit(kstar_rhs_gates(deltas)) - w)))


def _polish(w: np.ndarray, deltas: np.ndarray) -> np.ndarray:
    """Gauss-Newton refinement on the 8 angles, finite-difference Jacobian."""
    x = np.array(deltas, dtype=float)

    def f(v):
        diff = _two_qubit(kstar_rhs_gates(v)) - w
        return np.concatenate([diff.real.ravel(), diff.imag.ravel()])

    for it in range(AppConfig.POLISH_MAX_ITER):
        r = f(x)
        if np.max(np.abs(r)) <= AppConfig.POLISH_TARGET:
            logger.debug(f"K* polish converged after {it} iteration(s)")
            break
        h = 1e-7
        jac = np.stack([(f(x + h * e) - r) / h for e in np.eye(len(x))], axis=1)
        step, *_ = np.linalg.lstsq(jac, -r, rcond=None)
        x = x + step
    return x


def solve_kstar(gammas) -> KstarAngles:
    """
    Canonical right-hand angles for the left-hand angles `gammas`.

    The two-qubit instance fixes every angle; controls on further wires do not
    change the solution.

    Raises:
        InvalidInput: If there are not exactly four angles.
        SolveFailure: If the reconstruction misses the left-hand side by more than
            `AppConfig.SOLVER_TOL`.
    """
    gammas = tuple(float(g) for g in gammas)
    if len(gammas) != 4:
        raise InvalidInput(f"expected 4 angles, got {len(gammas)}")
    w = _two_qubit(kstar_lhs_gates(gammas))
    deltas = _complete(w, _analytic(w))
    residual = _residual(w, deltas.as_tuple())
    if residual > AppConfig.POLISH_TARGET:
        logger.debug(f"K* analytic residual {residual:.2e}; polishing")
        polished = _polish(w, np.array(deltas.as_tuple()))
        candidate = _complete(w, _analytic(_two_qubit(kstar_rhs_gates(polished))))
        if _residual(w, candidate.as_tuple()) < residual:
            deltas = candidate
            residual = _residual(w, deltas.as_tuple())
    if residual > AppConfig.SOLVER_TOL:
        raise SolveFailure(f"K* reconstruction residual {residual:.3e} for γ={gammas}")
    logger.debug(f"solve_kstar γ={gammas} -> δ={deltas.as_tuple()} (residual {residual:.1e})")
    return deltas

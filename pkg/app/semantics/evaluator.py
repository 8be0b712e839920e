import logging
import math

import numpy as np

from app.circuits.circuit import Circuit
from app.circuits.gates import Gate, GateKind, Theory
from app.config import AppConfig
from app.errors import DimensionCap, UnsupportedTheory
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Evaluator")

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)


def phase_matrix(angle: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * angle)]], dtype=complex)


def rx_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def local_action(g: Gate) -> tuple[np.ndarray, tuple[int, ...], tuple[tuple[int, bool], ...]]:
    """Reduces a unitary gate to (matrix, target wires, controls)."""
    kind = g.kind
    if kind is GateKind.H:
        return _H, g.targets, g.controls
    if kind is GateKind.P:
        return phase_matrix(g.angle), g.targets, g.controls
    if kind is GateKind.RX:
        return rx_matrix(g.angle), g.targets, g.controls
    if kind is GateKind.X:
        return _X, g.targets, g.controls
    if kind is GateKind.Z:
        return _Z, g.targets, g.controls
    if kind is GateKind.CNOT:
        c, t = g.targets
        return _X, (t,), g.controls + ((c, True),)
    if kind is GateKind.TOFFOLI:
        c1, c2, t = g.targets
        return _X, (t,), ((c1, True), (c2, True))
    if kind is GateKind.SWAP:
        return _SWAP, g.targets, g.controls
    if kind is GateKind.FREDKIN:
        c, a, b = g.targets
        return _SWAP, (a, b), ((c, True),)
    raise UnsupportedTheory(f"{kind.value} is not a unitary gate")


def apply_local(state: np.ndarray, matrix: np.ndarray, axes: tuple[int, ...],
                controls: tuple[tuple[int, bool], ...]) -> None:
    """
    Applies `matrix` in place on tensor axes `axes`, restricted to the slice where
    every control axis holds its polarity. Never builds matrix ⊗ I.
    """
    index: list = [slice(None)] * state.ndim
    for axis, positive in controls:
        index[axis] = 1 if positive else 0
    index = tuple(index)
    view = state[index]
    removed = sorted(axis for axis, _ in controls)
    local_axes = [a - sum(1 for r in removed if r < a) for a in axes]
    k = len(local_axes)
    moved = np.moveaxis(view, local_axes, list(range(k)))
    shape = moved.shape
    result = (matrix @ moved.reshape(2 ** k, -1)).reshape(shape)
    state[index] = np.moveaxis(result, list(range(k)), local_axes)


def _check_cap(width: int, cap: int | None, what: str) -> None:
    limit = AppConfig.MAX_QUBITS if cap is None else cap
    if width > limit:
        raise DimensionCap(f"{what} needs {width} qubits, cap is {limit}")


def eval_unitary(c: Circuit, max_qubits: int | None = None) -> np.ndarray:
    """
    ⟦c⟧ as a 2^n_out × 2^n_in matrix. INIT inserts |0⟩, FREE projects on ⟨0|.

    Raises:
        UnsupportedTheory: For QCground circuits.
        DimensionCap: If some point of the timeline is wider than the cap.
    """
    if c.theory is Theory.QCGROUND:
        raise UnsupportedTheory("QCground circuits have CPTP semantics; use eval_cptp")
    _check_cap(c.max_width, max_qubits, "unitary evaluation")
    n = c.n_in
    state = np.eye(2 ** n, dtype=complex).reshape((2,) * n + (2 ** n,))
    for g in c.gates:
        kind = g.kind
        if kind is GateKind.GLOBAL_PHASE:
            state *= np.exp(1j * g.angle)
        elif kind is GateKind.INIT:
            state = np.stack([state, np.zeros_like(state)], axis=g.targets[0])
            n += 1
        elif kind is GateKind.FREE:
            state = np.take(state, 0, axis=g.targets[0])
            n -= 1
        elif kind is GateKind.DISCARD:
            raise UnsupportedTheory("DISCARD has no pure-state semantics")
        else:
            matrix, targets, controls = local_action(g)
            apply_local(state, matrix, targets, controls)
    return state.reshape(2 ** n, 2 ** c.n_in)


def eval_cptp(c: Circuit, max_qubits: int | None = None) -> np.ndarray:
    """
    ⟦c⟧ as a superoperator acting on row-vectorized density matrices,
    vec(ρ)[i·d + j] = ρ[i, j], so a unitary U lifts to U ⊗ conj(U).

    The state tensor carries n ket axes followed by n bra axes and one column axis.
    """
    if c.theory is not Theory.QCGROUND:
        raise UnsupportedTheory("eval_cptp expects a QCground circuit; see embed_in_ground")
    limit = AppConfig.MAX_QUBITS if max_qubits is None else max_qubits
    _check_cap(c.max_width, limit // 2, "CPTP evaluation")
    n = c.n_in
    cols = 4 ** n
    state = np.eye(cols, dtype=complex).reshape((2,) * (2 * n) + (cols,))
    for g in c.gates:
        kind = g.kind
        if kind is GateKind.GLOBAL_PHASE:
            continue
        if kind is GateKind.INIT:
            w = g.targets[0]
            state = np.stack([state, np.zeros_like(state)], axis=w)
            state = np.stack([state, np.zeros_like(state)], axis=n + 1 + w)
            n += 1
        elif kind in (GateKind.DISCARD, GateKind.FREE):
            w = g.targets[0]
            zero = np.take(np.take(state, 0, axis=w), 0, axis=n - 1 + w)
            if kind is GateKind.DISCARD:
                one = np.take(np.take(state, 1, axis=w), 1, axis=n - 1 + w)
                state = zero + one
            else:
                state = zero
            n -= 1
        else:
            matrix, targets, controls = local_action(g)
            apply_local(state, matrix, targets, controls)
            apply_local(state, matrix.conj(), tuple(n + t for t in targets),
                        tuple((n + w, positive) for w, positive in controls))
    return state.reshape(4 ** n, cols)


def embed_in_ground(c: Circuit) -> Circuit:
    """
    Maps a circuit of any language into QCground: global phases are dropped and
    FREE becomes DISCARD (both act as ⟨0|·|0⟩ on a wire known to be in |0⟩).
    """
    gates = []
    for g in c.gates:
        if g.kind is GateKind.GLOBAL_PHASE:
            continue
        if g.kind is GateKind.FREE:
            g = Gate(GateKind.DISCARD, g.targets)
        gates.append(g)
    return Circuit(Theory.QCGROUND, c.n_in, tuple(gates))


def unitary_superoperator(u: np.ndarray) -> np.ndarray:
    """ρ ↦ UρU† in the row-vectorized convention."""
    return np.kron(u, u.conj())


def evaluate(c: Circuit, max_qubits: int | None = None) -> tuple[str, np.ndarray]:
    """Evaluates in the semantics native to `c.theory`; returns (kind, matrix)."""
    if c.theory is Theory.QCGROUND:
        return "cptp", eval_cptp(c, max_qubits)
    kind = "unitary" if c.theory is Theory.QC else "isometry"
    return kind, eval_unitary(c, max_qubits)

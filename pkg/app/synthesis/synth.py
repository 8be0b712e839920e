"""
Circuits from matrices.

Unitaries are split recursively by the cosine-sine decomposition on the most
significant wire: two block-diagonal halves (demultiplexed into smaller
unitaries around a uniformly controlled Rz) around a uniformly controlled Ry.
Unitaries fixing the first columns use the modified decomposition so that the
identity part stays visible as controlled blocks. Isometries are completed to
unitaries and prefixed with initialisations.
"""
import cmath
import logging

import numpy as np
import scipy.linalg

from app.circuits.circuit import Circuit, controlize
from app.circuits.gates import Gate, Theory, init, phase, p, rx, x
from app.config import AppConfig
from app.errors import DimensionCap, NotIsometry, NotUnitary, ShapeMismatch
from app.semantics.checks import is_isometry, is_unitary, max_deviation
from app.solvers.euler import euler_zxz
from app.synthesis.csd import csd_modified
from app.synthesis.multiplexor import ZERO_ANGLE, multiplexed_rotation
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Synth")

# Largest acceptable distance between a synthesized circuit and its target.
RESIDUAL_TOL = 1e-8


def _qubits(dim: int, what: str) -> int:
    n = dim.bit_length() - 1
    if dim < 1 or 2 ** n != dim:
        raise ShapeMismatch(f"{what} dimension {dim} is not a power of two")
    return n


def _cap(n: int) -> None:
    if n > AppConfig.SYNTH_MAX_QUBITS:
        raise DimensionCap(f"synthesis is limited to {AppConfig.SYNTH_MAX_QUBITS} qubits, got {n}")


def _shift(gates: list[Gate], offset: int = 1) -> list[Gate]:
    return [g.shifted(offset) for g in gates]


def _controlled(gates: list[Gate], n: int, positive: bool = True) -> list[Gate]:
    """`gates` on n wires, controlled by a new wire 0."""
    body = list(controlize(Circuit(Theory.QC, n, tuple(gates))).gates)
    return body if positive else [x(0)] + body + [x(0)]


def _single_qubit(u: np.ndarray) -> list[Gate]:
    e = euler_zxz(u)
    gates = [p(e.beta1, 0), rx(e.beta2, 0), p(e.beta3, 0), phase(e.beta0)]
    return [g for g in gates if abs(g.angle) > ZERO_ANGLE]


def demultiplex(u0: np.ndarray, u1: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    diag(u0, u1) = (I ⊗ v) · diag(d, d̄) · (I ⊗ w) with d unimodular.

    Returns:
        (v, phis, w) where phis are the Rz angles, one per state of the lower wires.
    """
    t, v = scipy.linalg.schur(u0 @ u1.conj().T, output="complex")
    d = np.sqrt(np.diag(t))
    w = np.diag(d) @ v.conj().T @ u1
    return v, -2 * np.angle(d), w


def _demultiplexed(u0: np.ndarray, u1: np.ndarray, n: int) -> list[Gate]:
    v, phis, w = demultiplex(u0, u1)
    rest = range(1, n)
    return _shift(_unitary_gates(w)) + multiplexed_rotation("z", phis, 0, rest) + _shift(_unitary_gates(v))


def _unitary_gates(u: np.ndarray) -> list[Gate]:
    n = _qubits(u.shape[0], "unitary")
    if n == 0:
        angle = cmath.phase(u[0, 0])
        return [phase(angle)] if abs(angle) > ZERO_ANGLE else []
    if n == 1:
        return _single_qubit(u)
    h = u.shape[0] // 2
    (a0, a1), theta, (b0, b1) = scipy.linalg.cossin(u, p=h, q=h, separate=True)
    return (
        _demultiplexed(b0, b1, n)
        + multiplexed_rotation("y", 2 * theta, 0, range(1, n))
        + _demultiplexed(a0, a1, n)
    )


def synth_unitary(u: np.ndarray) -> Circuit:
    """
    A QC circuit whose semantics is exactly `u`, global phase included.

    Raises:
        NotUnitary: If `u` is not unitary.
        ShapeMismatch: If its dimension is not a power of two.
        DimensionCap: Above the synthesis qubit cap.
    """
    u = np.asarray(u, dtype=complex)
    if not is_unitary(u, AppConfig.TOL):
        raise NotUnitary("synth_unitary expects a unitary matrix")
    n = _qubits(u.shape[0], "unitary")
    _cap(n)
    c = Circuit(Theory.QC, n, tuple(_unitary_gates(u)))
    logger.info(f"Synthesized a {n}-qubit unitary with {len(c.gates)} gate(s)")
    return c


def _zero_controlled_gates(u: np.ndarray, n_init: int) -> list[Gate]:
    n = _qubits(u.shape[0], "unitary")
    if n_init == 0:
        return []
    h = u.shape[0] // 2
    if n_init == 1:
        return _controlled(_unitary_gates(u[h:, h:]), n - 1)
    k = 2 ** (n - n_init)
    blocks = csd_modified(u, k)
    eye = np.eye(k)
    rest = range(1, n)
    return (
        _controlled(_zero_controlled_gates(scipy.linalg.block_diag(eye, blocks.b0), n_init - 1), n - 1, False)
        + _controlled(_unitary_gates(blocks.b1), n - 1)
        + multiplexed_rotation("y", 2 * blocks.angles(), 0, rest)
        + _controlled(_zero_controlled_gates(scipy.linalg.block_diag(eye, blocks.a0), n_init - 1), n - 1, False)
        + _controlled(_unitary_gates(blocks.a1), n - 1)
    )


def _check_zero_controlled(u: np.ndarray, n_init: int) -> tuple[np.ndarray, int]:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got shape {u.shape}")
    n = _qubits(u.shape[0], "unitary")
    if not 0 <= n_init <= n:
        raise ShapeMismatch(f"{n_init} initialised wire(s) do not fit in {n}")
    _cap(n)
    if not is_unitary(u, AppConfig.TOL):
        raise NotUnitary("the block is not unitary")
    k = 2 ** (n - n_init)
    if max_deviation(u[:, :k], np.eye(u.shape[0])[:, :k]) > AppConfig.TOL:
        raise ShapeMismatch(f"the first {k} column(s) are not those of the identity")
    return u, n


def zero_controlled_circuit(u: np.ndarray, n_init: int) -> Circuit:
    """
    A QC circuit for a unitary that fixes every state whose first `n_init` wires
    are |0⟩. Each block of the decomposition is controlled by the top wire, so
    initialising the top wires deletes it.

    Raises:
        ShapeMismatch: If `u` is not of that form.
    """
    u, n = _check_zero_controlled(u, n_init)
    return Circuit(Theory.QC, n, tuple(_zero_controlled_gates(u, n_init)))


def synth_zero_controlled(u: np.ndarray, n_init: int) -> Circuit:
    """
    `n_init` initialisations followed by `zero_controlled_circuit(u, n_init)`:
    a QCiso circuit whose semantics is |x⟩ ↦ |0…0⟩ ⊗ |x⟩.

    Raises:
        ShapeMismatch: If `u` is not of that form.
    """
    body = zero_controlled_circuit(u, n_init)
    inits = tuple(init(0) for _ in range(n_init))
    return Circuit(Theory.QCISO, body.n_in - n_init, inits + body.gates)


def complete_isometry(v: np.ndarray, seed: int | None = None) -> np.ndarray:
    """
    A unitary whose first columns are `v`.

    The remaining columns span the orthogonal complement of v: seeded complex
    Gaussian columns are projected off v and orthonormalized by a column-pivoted
    QR, so the completion is reproducible for a given seed.
    """
    rows, cols = v.shape
    rng = np.random.default_rng(AppConfig.SEED if seed is None else seed)
    g = rng.standard_normal((rows, rows)) + 1j * rng.standard_normal((rows, rows))
    for _ in range(2):
        g -= v @ (v.conj().T @ g)
    q, _, _ = scipy.linalg.qr(g, pivoting=True)
    return np.hstack([v, q[:, :rows - cols]])


def synth_isometry(v: np.ndarray) -> Circuit:
    """
    A QCiso circuit whose semantics is exactly `v`.

    The extra output wires are created on top by INIT, so a 2^(n+k) × 2^n
    isometry gets k initialisations before the synthesized completion.

    Raises:
        NotIsometry: If v†v ≠ I.
        ShapeMismatch: If either dimension is not a power of two.
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {v.shape}")
    if not is_isometry(v, AppConfig.TOL):
        raise NotIsometry("synth_isometry expects v†v = I")
    n_out = _qubits(v.shape[0], "output")
    n_in = _qubits(v.shape[1], "input")
    _cap(n_out)
    body = _unitary_gates(complete_isometry(v))
    inits = tuple(init(0) for _ in range(n_out - n_in))
    c = Circuit(Theory.QCISO, n_in, inits + tuple(body))
    logger.info(f"Synthesized a {n_in}→{n_out} qubit isometry with {len(c.gates)} gate(s)")
    return c

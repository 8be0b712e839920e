import math

import numpy as np

from app.circuits.circuit import Circuit
from app.circuits.gates import Gate, GateKind, Theory, phase, h, p, rx, x, z, cx, swap, init, free, discard

_ONE_WIRE = ("H", "P", "RX", "X", "Z")


def random_angle(rng: np.random.Generator) -> float:
    return float(rng.uniform(-2 * math.pi, 2 * math.pi))


def random_gate(rng: np.random.Generator, width: int, shortcuts: bool = True, controls: bool = False) -> Gate:
    """A random unitary gate on `width` wires (no INIT/FREE/DISCARD)."""
    choices = ["PHASE", "H", "P"]
    if shortcuts:
        choices += ["RX", "X", "Z"]
    if width >= 2:
        choices += ["CX", "SWAP"]
    kind = choices[int(rng.integers(len(choices)))]
    wires = [int(w) for w in rng.permutation(width)]
    if kind == "PHASE":
        return phase(random_angle(rng))
    if kind == "CX":
        return cx(wires[0], wires[1])
    if kind == "SWAP":
        return swap(wires[0], wires[1])
    t = wires[0]
    ctrl = ()
    if controls and kind in ("P", "RX", "X", "Z") and width >= 2:
        k = int(rng.integers(0, min(3, width)))
        ctrl = tuple((w, bool(rng.integers(2))) for w in wires[1:1 + k])
    if kind == "H":
        return h(t)
    if kind == "P":
        return p(random_angle(rng), t, ctrl)
    if kind == "RX":
        return rx(random_angle(rng), t, ctrl)
    if kind == "X":
        return x(t, ctrl)
    return z(t, ctrl)


def random_circuit(rng: np.random.Generator, n: int, depth: int, theory: Theory = Theory.QC,
                   shortcuts: bool = True, controls: bool = False, inits: int = 0, releases: int = 0) -> Circuit:
    """
    Random circuit with `depth` unitary gates on `n` input wires.

    `inits` INIT gates are sprinkled in at random positions; `releases` DISCARD
    (QCground) or FREE gates remove wires at the end.
    """
    width = n
    slots = sorted(int(s) for s in rng.integers(0, depth + 1, size=inits))
    gates: list[Gate] = []
    for i in range(depth + 1):
        while slots and slots[0] == i:
            slots.pop(0)
            gates.append(init(int(rng.integers(0, width + 1))))
            width += 1
        if i == depth:
            break
        if width == 0:
            continue
        g = random_gate(rng, width, shortcuts, controls)
        if theory is Theory.QCGROUND and g.kind is GateKind.GLOBAL_PHASE:
            g = h(0)
        gates.append(g)
    for _ in range(min(releases, width)):
        w = int(rng.integers(width))
        gates.append(discard(w) if theory is Theory.QCGROUND else free(w))
        width -= 1
    return Circuit(theory, n, tuple(gates))


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-distributed unitary from the QR of a complex Gaussian matrix."""
    zm = (rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))) / math.sqrt(2)
    q, r = np.linalg.qr(zm)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return random_unitary(rng, rows)[:, :cols]

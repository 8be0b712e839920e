"""Classical operations written as QCground circuits."""
from app.circuits.circuit import Circuit
from app.circuits.gates import Theory, h, cx, toffoli, init, discard


def measurement() -> Circuit:
    """Standard-basis measurement 1 → 1: copy into a fresh wire, discard the original."""
    return Circuit(Theory.QCGROUND, 1, (init(1), cx(0, 1), discard(0)))


def and_gate() -> Circuit:
    """Classical AND 2 → 1 through a Toffoli onto a fresh wire."""
    return Circuit(Theory.QCGROUND, 2, (init(2), toffoli(0, 1, 2), discard(0), discard(0)))


def copy_standard(theory: Theory = Theory.QCGROUND) -> Circuit:
    """|x⟩ ↦ |xx⟩ for x ∈ {0, 1}."""
    return Circuit(theory, 1, (init(1), cx(0, 1)))


def copy_diagonal(theory: Theory = Theory.QCGROUND) -> Circuit:
    """|±⟩ ↦ |±±⟩."""
    return Circuit(theory, 1, (h(0), init(1), cx(0, 1), h(0), h(1)))

from dataclasses import dataclass

import numpy as np

from app.config import AppConfig
from app.errors import DimensionMismatch, InvalidInput

PSD_SLACK = 1e-9


@dataclass(frozen=True)
class Tolerance:
    """Absolute tolerance on the max-entry-modulus distance."""
    abs_eps: float = AppConfig.TOL

    def __post_init__(self):
        if not self.abs_eps > 0:
            raise InvalidInput(f"tolerance must be positive, got {self.abs_eps}")


def resolve_tolerance(tol) -> float:
    if tol is None:
        return AppConfig.TOL
    if isinstance(tol, Tolerance):
        return tol.abs_eps
    return Tolerance(float(tol)).abs_eps


def max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot compare shapes {a.shape} and {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def matrices_equal(a: np.ndarray, b: np.ndarray, tol=None) -> bool:
    return max_deviation(a, b) <= resolve_tolerance(tol)


def is_unitary(m: np.ndarray, tol=None) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return is_isometry(m, tol) and matrices_equal(m @ m.conj().T, np.eye(m.shape[0]), tol)


def is_isometry(m: np.ndarray, tol=None) -> bool:
    """V†V = I."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] < m.shape[1]:
        return False
    return matrices_equal(m.conj().T @ m, np.eye(m.shape[1]), tol)


def _dims(s: np.ndarray) -> tuple[int, int]:
    rows, cols = s.shape
    d_out, d_in = int(round(np.sqrt(rows))), int(round(np.sqrt(cols)))
    if d_out * d_out != rows or d_in * d_in != cols:
        raise DimensionMismatch(f"{s.shape} is not the shape of a superoperator")
    return d_out, d_in


def choi_matrix(s: np.ndarray) -> np.ndarray:
    """
    J = Σ_ij |i⟩⟨j| ⊗ E(|i⟩⟨j|) for the row-vectorized superoperator `s`
    (input factor first).
    """
    s = np.asarray(s)
    d_out, d_in = _dims(s)
    blocks = s.reshape(d_out, d_out, d_in, d_in)  # [k, l, i, j] = E(|i⟩⟨j|)[k, l]
    return blocks.transpose(2, 0, 3, 1).reshape(d_in * d_out, d_in * d_out)


def is_cptp(s: np.ndarray, tol=None) -> bool:
    """Choi matrix Hermitian PSD (eigenvalues ≥ −1e−9) and its output partial trace is I."""
    s = np.asarray(s)
    d_out, d_in = _dims(s)
    choi = choi_matrix(s)
    eps = resolve_tolerance(tol)
    if not matrices_equal(choi, choi.conj().T, eps):
        return False
    if np.min(np.linalg.eigvalsh((choi + choi.conj().T) / 2)) < -PSD_SLACK:
        return False
    partial = np.einsum("ikjk->ij", choi.reshape(d_in, d_out, d_in, d_out))
    return matrices_equal(partial, np.eye(d_in), eps)

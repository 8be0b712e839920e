"""
Dense factorizations with fixed phase conventions: triangular factors get a
non-negative real diagonal and singular values come sorted in descending order,
so equal inputs always give equal circuits.
"""
import numpy as np
import scipy.linalg


def _phases(diagonal: np.ndarray) -> np.ndarray:
    """Unit phases d with conj(d)·diagonal ≥ 0; 1 where the diagonal vanishes."""
    out = np.ones(len(diagonal), dtype=complex)
    nonzero = np.abs(diagonal) > 0
    out[nonzero] = diagonal[nonzero] / np.abs(diagonal[nonzero])
    return out


def qr_positive(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """m = Q R, Q unitary (complete), R upper triangular with non-negative diagonal."""
    m = np.asarray(m, dtype=complex)
    q, r = scipy.linalg.qr(m)
    k = min(r.shape)
    d = np.ones(q.shape[1], dtype=complex)
    d[:k] = _phases(np.diag(r)[:k])
    return q * d, d.conj()[:, None] * r


def rq_positive(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """m = R Q for square m, R upper triangular with non-negative diagonal."""
    m = np.asarray(m, dtype=complex)
    r, q = scipy.linalg.rq(m)
    d = _phases(np.diag(r))
    return r * d.conj(), d[:, None] * q


def ql_positive(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """m = Q L for square m, L lower triangular with non-negative diagonal."""
    m = np.asarray(m, dtype=complex)
    q, r = qr_positive(m[::-1, ::-1])
    return q[::-1, ::-1], r[::-1, ::-1]


def svd_sorted(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """m = U diag(d) V with d descending and non-negative."""
    u, d, vh = np.linalg.svd(np.asarray(m, dtype=complex))
    return u, d, vh


def nearest_unitary(m: np.ndarray) -> np.ndarray:
    u, _, vh = svd_sorted(m)
    return u @ vh

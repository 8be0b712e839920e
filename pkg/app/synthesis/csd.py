import logging
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from app.config import AppConfig
from app.errors import BlockNotIdentity, NotUnitary, ShapeMismatch
from app.semantics.checks import is_unitary, max_deviation
from app.synthesis.linalg import ql_positive, rq_positive, svd_sorted
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Csd")

# Singular values of the upper block this close to 1 count as unit values.
UNIT_SINGULAR_TOL = 1e-10


@dataclass(frozen=True)
class CsdBlocks:
    """
    u = diag(I_k, a0, a1) · M · diag(I_k, b0, b1) where M rotates index
    `k + ones + i` into `h + k + ones + i` by (c[i], s[i]) and fixes every other
    index; `h` is half the dimension and `ones` counts the unit singular values
    of the upper block, which carry no rotation.
    """
    a0: np.ndarray
    a1: np.ndarray
    b0: np.ndarray
    b1: np.ndarray
    c: np.ndarray
    s: np.ndarray
    k: int
    ones: int

    @property
    def d(self) -> int:
        return len(self.c)

    @property
    def half(self) -> int:
        return self.a1.shape[0]

    def angles(self) -> np.ndarray:
        """Rotation angle per lower-half index j ∈ [0, h); zero below k + ones."""
        theta = np.zeros(self.half)
        theta[self.k + self.ones:] = np.arctan2(self.s, self.c)
        return theta

    def middle(self) -> np.ndarray:
        h = self.half
        m = np.eye(2 * h, dtype=complex)
        for j, t in enumerate(self.angles()):
            if t == 0.0:
                continue
            c, s = np.cos(t), np.sin(t)
            m[j, j], m[j, j + h], m[j + h, j], m[j + h, j + h] = c, -s, s, c
        return m

    def reconstruct(self) -> np.ndarray:
        eye = np.eye(self.k)
        left = scipy.linalg.block_diag(eye, self.a0, self.a1)
        right = scipy.linalg.block_diag(eye, self.b0, self.b1)
        return left @ self.middle() @ right


def _check_input(u: np.ndarray, k: int) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1] or u.shape[0] % 2:
        raise ShapeMismatch(f"expected a square matrix of even dimension, got shape {u.shape}")
    if not 0 <= k <= u.shape[0] // 2:
        raise ShapeMismatch(f"identity block {k} does not fit in the upper half of {u.shape[0]}")
    if not is_unitary(u, AppConfig.TOL):
        raise NotUnitary("matrix is not unitary")
    if k and max_deviation(u[:k, :k], np.eye(k)) > AppConfig.TOL:
        raise BlockNotIdentity(f"top-left {k}×{k} block is not the identity")
    return u


def csd_modified(u: np.ndarray, k: int) -> CsdBlocks:
    """
    Cosine-sine decomposition of a unitary whose top-left k×k block is the identity.

    The upper block u00 = a0·C0·b0 is an SVD; a1 comes from a QL factorization of
    (0 | u10·b0†) and b1 from an RQ factorization of (0 ; a0†·u01). What remains
    in the middle is a rotation block plus a unitary x0 on the untouched part of
    the lower half, which is folded into b1.

    Raises:
        NotUnitary: If `u` is not unitary.
        BlockNotIdentity: If the top-left block is not the identity.
        ShapeMismatch: If `u` is not square of even dimension or `k` exceeds half of it.
    """
    u = _check_input(u, k)
    h = u.shape[0] // 2
    u00, u01 = u[k:h, k:h], u[k:h, h:]
    u10, u11 = u[h:, k:h], u[h:, h:]

    a0, c0, b0 = svd_sorted(u00)
    a1, _ = ql_positive(np.hstack([np.zeros((h, k), dtype=complex), u10 @ b0.conj().T]))
    _, b1_prime = rq_positive(np.vstack([np.zeros((k, h), dtype=complex), a0.conj().T @ u01]))

    ones = int(np.sum(c0 >= 1 - UNIT_SINGULAR_TOL))
    kk = k + ones
    d = h - kk
    lower = a1.conj().T @ u11 @ b1_prime.conj().T
    c = np.clip(c0[ones:].real, 0.0, 1.0)
    lower_left = a1.conj().T @ u10 @ b0.conj().T
    s = np.clip(np.real(np.diag(lower_left[kk:, ones:])), 0.0, 1.0) if d else np.zeros(0)
    x0 = lower[:kk, :kk]
    b1 = scipy.linalg.block_diag(x0, -np.eye(d)) @ b1_prime
    blocks = CsdBlocks(a0=a0, a1=a1, b0=b0, b1=b1, c=c, s=s, k=k, ones=ones)
    logger.debug(f"CSD of {u.shape[0]}×{u.shape[0]} (k={k}): {ones} unit value(s), {d} rotation(s)")
    return blocks

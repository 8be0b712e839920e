import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from app.config import AppConfig
from app.errors import NotUnitary
from app.semantics.checks import is_unitary
from app.semantics.evaluator import phase_matrix, rx_matrix
from app.solvers.angles import canonical_angle, is_special
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Euler")

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


@dataclass(frozen=True)
class EulerAngles:
    """
    β0..β3 of GlobalPhase(β0) · P(β1) · Rx(β2) · P(β3), in circuit order, so the
    matrix is e^{iβ0} P(β3) Rx(β2) P(β1).

    With `form="xzx"` the three rotations are Rx(β1) · P(β2) · Rx(β3) instead.
    """
    beta0: float
    beta1: float
    beta2: float
    beta3: float
    form: str = "zxz"

    def as_tuple(self) -> tuple[float, float, float, float]:
        return self.beta0, self.beta1, self.beta2, self.beta3

    def matrix(self) -> np.ndarray:
        g = cmath.exp(1j * self.beta0)
        if self.form == "xzx":
            return g * rx_matrix(self.beta3) @ phase_matrix(self.beta2) @ rx_matrix(self.beta1)
        return g * phase_matrix(self.beta3) @ rx_matrix(self.beta2) @ phase_matrix(self.beta1)

    def violations(self) -> list[str]:
        """Canonicity clauses that do not hold (empty when canonical)."""
        out = []
        if not 0 <= self.beta1 < math.pi:
            out.append("β1 must lie in [0, π)")
        for name, value in (("β0", self.beta0), ("β2", self.beta2), ("β3", self.beta3)):
            if not 0 <= value < 2 * math.pi:
                out.append(f"{name} must lie in [0, 2π)")
        if is_special(self.beta2, (0.0, math.pi)) and self.beta1 != 0:
            out.append("β2 ∈ {0, π} requires β1 = 0")
        return out

    @property
    def is_canonical(self) -> bool:
        return not self.violations()


def _check_unitary(u: np.ndarray) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or not is_unitary(u, AppConfig.TOL):
        raise NotUnitary(f"expected a 2×2 unitary, got shape {u.shape}")
    return u


def euler_zxz(u: np.ndarray) -> EulerAngles:
    """
    Canonical angles with u = e^{iβ0} P(β3) Rx(β2) P(β1).

    Raises:
        NotUnitary: If `u` is not a 2×2 unitary to the configured tolerance.
    """
    u = _check_unitary(u)
    eps = AppConfig.ANGLE_SNAP
    mag_c, mag_s = abs(u[0, 0]), abs(u[1, 0])
    if mag_s <= eps:
        branch = "diagonal"
        b0 = cmath.phase(u[0, 0])
        b1, b2 = 0.0, 0.0
        b3 = cmath.phase(u[1, 1]) - b0
    elif mag_c <= eps:
        branch = "anti-diagonal"
        b1, b2 = 0.0, math.pi
        b0 = cmath.phase(u[0, 1]) + math.pi / 2
        b3 = cmath.phase(u[1, 0]) + math.pi / 2 - b0
    else:
        branch = "generic"
        c = mag_c
        b0 = cmath.phase(u[0, 0])
        b1 = cmath.phase(u[0, 1]) + math.pi / 2 - b0
        b3 = cmath.phase(u[1, 0]) + math.pi / 2 - b0
        if canonical_angle(b1) >= math.pi:
            c = -c
            b0 += math.pi
            b1 -= math.pi
            b3 -= math.pi
        b2 = 2 * math.atan2(mag_s, c)
    angles = EulerAngles(
        canonical_angle(b0),
        canonical_angle(b1),
        canonical_angle(b2),
        canonical_angle(b3),
    )
    if is_special(angles.beta2, (0.0, math.pi)) and angles.beta1 != 0:
        # β1 folds into β3 when the middle rotation is diagonal or anti-diagonal.
        if angles.beta2 == 0:
            angles = EulerAngles(angles.beta0, 0.0, 0.0, canonical_angle(angles.beta3 + angles.beta1))
        else:
            # P(β3) X P(β1) = e^{iβ1} P(β3 − β1) X
            angles = EulerAngles(canonical_angle(angles.beta0 + angles.beta1), 0.0, angles.beta2,
                                 canonical_angle(angles.beta3 - angles.beta1))
    logger.debug(f"euler_zxz branch={branch} angles={angles.as_tuple()}")
    return angles


def euler_xzx(u: np.ndarray) -> EulerAngles:
    """
    Canonical angles with u = e^{iβ0} Rx(β3) P(β2) Rx(β1).

    Conjugating by H turns Rx into P up to phase, so the zxz angles of H u H
    give the rotations and the phase is corrected by (β1 + β3 − β2)/2.
    """
    u = _check_unitary(u)
    a = euler_zxz(_H @ u @ _H)
    b0 = canonical_angle(a.beta0 + (a.beta1 + a.beta3 - a.beta2) / 2)
    return EulerAngles(b0, a.beta1, a.beta2, a.beta3, form="xzx")

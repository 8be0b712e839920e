import math

from app.circuits.gates import wrap_angle, TWO_PI, FOUR_PI
from app.config import AppConfig

__all__ = ["wrap_angle", "canonical_angle", "is_special", "TWO_PI", "FOUR_PI", "DECIMALS"]

# Canonical outputs are rounded so that matrices equal up to float noise give
# bitwise-equal angles.
DECIMALS = 11


def canonical_angle(angle: float, period: float = TWO_PI, snap: float | None = None) -> float:
    """
    Wraps into [0, period), rounds, and snaps values within `snap` of a multiple
    of π onto that multiple exactly (the period itself snaps to 0).
    """
    eps = AppConfig.ANGLE_SNAP if snap is None else snap
    a = round(wrap_angle(angle, period), DECIMALS)
    k = round(a / math.pi)
    if abs(a - k * math.pi) <= eps:
        a = k * math.pi
    if a >= period or a < 0:
        a = wrap_angle(a, period)
        if abs(a - period) <= eps:
            a = 0.0
    return 0.0 if a == 0 else a


def is_special(angle: float, specials, tol: float | None = None) -> bool:
    """{0, π, ...}-membership test used by the canonicity clauses."""
    eps = AppConfig.CLAUSE_TOL if tol is None else tol
    return any(abs(angle - s) <= eps for s in specials)

from app.solvers.angles import canonical_angle, is_special
from app.solvers.conversions import kstar_new_from_old, kstar_old_from_new
from app.solvers.euler import EulerAngles, euler_xzx, euler_zxz
from app.solvers.kstar import KstarAngles, KstarOldAngles, kstar_lhs, kstar_rhs, solve_kstar

__all__ = [
    "canonical_angle", "is_special",
    "EulerAngles", "euler_zxz", "euler_xzx",
    "KstarAngles", "KstarOldAngles", "kstar_lhs", "kstar_rhs", "solve_kstar",
    "kstar_old_from_new", "kstar_new_from_old",
]

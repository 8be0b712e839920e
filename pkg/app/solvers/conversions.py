"""Conversions between canonical K* tuples (δ′1..δ′8) and legacy K* tuples (δ1..δ9)."""
import math

from app.errors import InvalidInput
from app.solvers.angles import canonical_angle, TWO_PI
from app.solvers.kstar import KstarAngles, KstarOldAngles

PI = math.pi


def _require_canonical(angles) -> None:
    problems = angles.violations()
    if problems:
        raise InvalidInput(f"non-canonical {type(angles).__name__}: {'; '.join(problems)}")


def kstar_old_from_new(new: KstarAngles) -> KstarOldAngles:
    """
    Maps a canonical K* tuple onto the legacy nine-angle form.

    Raises:
        InvalidInput: If `new` violates the K* canonicity conditions.
    """
    _require_canonical(new)
    d1, d2, d3, d4, d5, d6, d7, d8 = new.as_tuple()
    upper = d4 >= TWO_PI
    moved = d3 == 0 and d2 != 0

    old2 = 0.0 if moved else d2
    old4 = d4 - TWO_PI if upper else d4
    old6, old8 = d6, d8
    if d6 != 0 and upper:
        old6 = canonical_angle(TWO_PI - d6)
        old8 = canonical_angle(d8 + PI)
    if moved:
        old9 = canonical_angle(d2 + PI) if upper else d2
    else:
        old9 = PI if upper else 0.0
    return KstarOldAngles(d1, old2, d3, canonical_angle(old4), d5, old6, d7, old8, old9)


def kstar_new_from_old(old: KstarOldAngles) -> KstarAngles:
    """
    Maps a legacy tuple onto the canonical K* form.

    Raises:
        InvalidInput: If `old` violates the legacy canonicity conditions.
    """
    _require_canonical(old)
    d1, d2, d3, d4, d5, d6, d7, d8, d9 = old.as_tuple()
    if d9 in (0.0, PI):
        new2 = d2
    elif d9 < PI:
        new2 = d9
    else:
        new2 = canonical_angle(d9 - PI)
    new4 = d4 if d9 < PI else d4 + TWO_PI
    new6, new8 = d6, d8
    if d9 == PI and d6 != 0:
        new6 = canonical_angle(TWO_PI - d6)
        new8 = canonical_angle(d8 + PI)
    return KstarAngles(d1, new2, d3, new4, d5, new6, d7, new8)

"""
Uniformly controlled rotations: one rotation of the target per basis state of
the controls, emitted as a Gray-code ladder of rotations and parity flips.
"""
import math
from typing import Sequence

import numpy as np

from app.circuits.gates import Gate, h, p, rx, z

# Rotations below this are dropped.
ZERO_ANGLE = 1e-14


def gray(i: int) -> int:
    return i ^ (i >> 1)


def ladder_angles(phis: Sequence[float]) -> np.ndarray:
    """
    Angles θ of the ladder such that control state j sees the total rotation
    φ_j = Σ_s (−1)^{popcount(j & gray(s))} θ_s.
    """
    phis = np.asarray(phis, dtype=float)
    n = len(phis)
    signs = np.array([[(-1) ** bin(j & gray(s)).count("1") for j in range(n)] for s in range(n)])
    return signs @ phis / n


def _flip_bit(s: int, n: int) -> int:
    """Bit toggled between gray(s) and gray(s + 1), cyclically."""
    changed = gray(s) ^ gray((s + 1) % n)
    return changed.bit_length() - 1


def _rx_ladder(phis: Sequence[float], target: int, controls: Sequence[int]) -> list[Gate]:
    n = len(phis)
    k = len(controls)
    if n != 2 ** k:
        raise ValueError(f"{n} angle(s) for {k} control(s)")
    if k == 0:
        return [rx(phis[0], target)] if abs(phis[0]) > ZERO_ANGLE else []
    gates: list[Gate] = []
    for s, theta in enumerate(ladder_angles(phis)):
        if abs(theta) > ZERO_ANGLE:
            gates.append(rx(float(theta), target))
        # Bit b of the control state lives on controls[k − 1 − b] (big-endian).
        gates.append(z(target, ((controls[k - 1 - _flip_bit(s, n)], True),)))
    return gates


def multiplexed_rotation(axis: str, phis: Sequence[float], target: int, controls: Sequence[int]) -> list[Gate]:
    """
    Gates applying R_axis(φ_j) to `target` when `controls` hold basis state j.

    Rx flips sign under Z, so the x ladder uses controlled-Z; y and z are the x
    ladder conjugated by P(π/2) and H on the target.
    """
    if not np.any(np.abs(np.asarray(phis, dtype=float)) > ZERO_ANGLE):
        return []
    ladder = _rx_ladder(phis, target, controls)
    if axis == "x":
        return ladder
    if axis == "y":
        return [p(-math.pi / 2, target)] + ladder + [p(math.pi / 2, target)]
    if axis == "z":
        return [h(target)] + ladder + [h(target)]
    raise ValueError(f"unknown rotation axis {axis!r}")

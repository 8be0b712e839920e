# tests/unit/solvers/test_euler.py

import math

import numpy as np
import pytest

from app.circuits.sampling import random_unitary
from app.errors import NotUnitary
from app.solvers.angles import DECIMALS, FOUR_PI, canonical_angle, is_special
from app.solvers.euler import EulerAngles, euler_xzx, euler_zxz

PI = math.pi
SQ = 1 / math.sqrt(2)


@pytest.fixture
def rng():
    """Seeded generator for Haar-random unitaries."""
    return np.random.default_rng(1000)


@pytest.mark.parametrize("angle, period, expected", [
    (-PI / 2, 2 * PI, round(3 * PI / 2, DECIMALS)),
    (2 * PI - 1e-13, 2 * PI, 0.0),
    (PI + 1e-12, 2 * PI, PI),
    (5 * PI, FOUR_PI, PI),
    (-0.0, 2 * PI, 0.0),
])
def test_canonical_angle_wraps_and_snaps(angle, period, expected):
    # 2. Act
    result = canonical_angle(angle, period)

    # 3. Assert
    assert result == expected


def test_is_special_uses_the_clause_tolerance():
    assert is_special(PI + 1e-13, (0.0, PI))
    assert not is_special(PI + 1e-6, (0.0, PI))


@pytest.mark.parametrize("u, expected", [
    (np.eye(2), (0.0, 0.0, 0.0, 0.0)),
    (np.array([[0, 1], [1, 0]]), (PI / 2, 0.0, PI, 0.0)),
    (np.array([[1, 0], [0, -1]]), (0.0, 0.0, 0.0, PI)),
    (np.array([[SQ, SQ], [SQ, -SQ]]), (0.0, PI / 2, PI / 2, PI / 2)),
    (np.exp(0.3j) * np.eye(2), (0.3, 0.0, 0.0, 0.0)),
])
def test_euler_zxz_known_gates(u, expected):
    """X, Z, H and global phases land on their documented canonical angles."""
    # 2. Act
    angles = euler_zxz(u)

    # 3. Assert
    assert angles.as_tuple() == pytest.approx(expected, abs=1e-10)
    assert angles.is_canonical


def test_euler_zxz_reconstructs_random_unitaries(rng):
    for _ in range(1000):
        # 1. Arrange
        u = random_unitary(rng, 2)

        # 2. Act
        angles = euler_zxz(u)

        # 3. Assert
        assert angles.is_canonical, angles.violations()
        assert np.max(np.abs(angles.matrix() - u)) < 1e-10


def test_equal_matrices_give_bitwise_equal_angles(rng):
    for _ in range(100):
        # 1. Arrange
        u = random_unitary(rng, 2)
        v = random_unitary(rng, 2)
        same = (u @ v) @ v.conj().T

        # 2. Act & 3. Assert
        assert euler_zxz(u).as_tuple() == euler_zxz(same).as_tuple()


def test_euler_xzx_reconstructs(rng):
    for _ in range(200):
        u = random_unitary(rng, 2)
        angles = euler_xzx(u)
        assert angles.form == "xzx"
        assert np.max(np.abs(angles.matrix() - u)) < 1e-10


@pytest.mark.parametrize("m", [
    np.array([[1, 1], [0, 1]]),
    np.eye(3),
])
def test_non_unitary_input_is_rejected(m):
    with pytest.raises(NotUnitary):
        euler_zxz(m)


def test_violations_name_the_broken_clause():
    # 1. Arrange
    angles = EulerAngles(0.0, 0.5, PI, 0.0)

    # 2. Act & 3. Assert
    assert angles.violations() == ["β2 ∈ {0, π} requires β1 = 0"]

# tests/unit/synthesis/test_csd.py

import numpy as np
import pytest
import scipy.linalg

from app.circuits.sampling import random_unitary
from app.errors import BlockNotIdentity, NotUnitary, ShapeMismatch
from app.synthesis.csd import csd_modified
from app.synthesis.linalg import ql_positive, qr_positive, rq_positive


@pytest.fixture
def rng():
    """Seeded generator for Haar-random blocks."""
    return np.random.default_rng(31)


def _with_identity_block(rng, dim: int, k: int) -> np.ndarray:
    return scipy.linalg.block_diag(np.eye(k), random_unitary(rng, dim - k))


@pytest.mark.parametrize("factor, triangle", [
    (qr_positive, np.triu),
    (rq_positive, np.triu),
    (ql_positive, np.tril),
])
def test_factorizations_have_non_negative_real_diagonals(rng, factor, triangle):
    # 1. Arrange
    m = random_unitary(rng, 4) @ np.diag([1, 2, 3, 4])

    # 2. Act
    first, second = factor(m)
    tri, unitary = (first, second) if factor is rq_positive else (second, first)

    # 3. Assert
    assert np.allclose(first @ second, m)
    assert np.allclose(tri, triangle(tri))
    assert np.all(np.diag(tri).real >= 0) and np.allclose(np.diag(tri).imag, 0)
    assert np.allclose(unitary.conj().T @ unitary, np.eye(4))


@pytest.mark.parametrize("qubits", [3, 4])
@pytest.mark.parametrize("k", [1, 2, 4])
def test_modified_csd_reconstructs(rng, qubits, k):
    for _ in range(34):
        # 1. Arrange
        u = _with_identity_block(rng, 2 ** qubits, k)

        # 2. Act
        blocks = csd_modified(u, k)

        # 3. Assert
        assert np.max(np.abs(blocks.reconstruct() - u)) < 1e-10
        assert np.max(np.abs(blocks.c ** 2 + blocks.s ** 2 - 1), initial=0.0) < 1e-10
        assert blocks.k == k


def test_modified_csd_of_a_generic_unitary(rng):
    # 1. Arrange
    u = random_unitary(rng, 8)

    # 2. Act
    blocks = csd_modified(u, 0)

    # 3. Assert
    assert np.max(np.abs(blocks.reconstruct() - u)) < 1e-10
    assert blocks.angles().shape == (4,)


def test_unit_singular_values_get_no_rotation():
    """A block-diagonal input has nothing to rotate."""
    # 1. Arrange
    u = scipy.linalg.block_diag(np.eye(2), np.array([[0, 1], [1, 0]]), np.eye(4))

    # 2. Act
    blocks = csd_modified(u, 1)

    # 3. Assert
    assert blocks.ones == 3
    assert np.all(blocks.angles() == 0)
    assert np.allclose(blocks.reconstruct(), u)


@pytest.mark.parametrize("u, k, error", [
    (np.eye(3), 0, ShapeMismatch),
    (np.eye(4), 3, ShapeMismatch),
    (np.ones((4, 4)), 0, NotUnitary),
    (np.kron(np.array([[0, 1], [1, 0]]), np.eye(2)), 1, BlockNotIdentity),
])
def test_bad_inputs_are_rejected(u, k, error):
    with pytest.raises(error):
        csd_modified(u, k)


def test_identity_block_of_half_the_dimension_leaves_nothing_to_rotate(rng):
    # 1. Arrange
    u = _with_identity_block(rng, 8, 4)

    # 2. Act
    blocks = csd_modified(u, 4)

    # 3. Assert
    assert blocks.c.size == 0 and blocks.s.size == 0
    assert np.max(np.abs(blocks.reconstruct() - u)) < 1e-10

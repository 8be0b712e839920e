# tests/unit/solvers/test_kstar.py

import math

import numpy as np
import pytest

from app.config import AppConfig
from app.errors import InvalidInput, SolveFailure
from app.semantics.evaluator import eval_unitary
from app.solvers.angles import FOUR_PI
from app.solvers.conversions import kstar_new_from_old, kstar_old_from_new
from app.solvers.kstar import KstarAngles, KstarOldAngles, kstar_lhs, kstar_rhs, solve_kstar

PI = math.pi


@pytest.fixture
def gammas():
    """Five hundred seeded left-hand angle tuples."""
    rng = np.random.default_rng(5)
    return [tuple(float(g) for g in rng.uniform(0, 4 * math.pi, size=4)) for _ in range(500)]


def _deviation(gamma, delta, n=2) -> float:
    return float(np.max(np.abs(eval_unitary(kstar_lhs(gamma, n)) - eval_unitary(kstar_rhs(delta, n)))))


def test_zero_angles_solve_to_exact_zeros():
    # 2. Act
    delta = solve_kstar((0.0, 0.0, 0.0, 0.0))

    # 3. Assert
    assert delta.as_tuple() == (0.0,) * 8


def test_solve_kstar_reconstructs_canonically(gammas):
    for gamma in gammas:
        # 2. Act
        delta = solve_kstar(gamma)

        # 3. Assert
        assert delta.is_canonical, (gamma, delta.violations())
        assert _deviation(gamma, delta) < 1e-9


@pytest.mark.parametrize("gamma", [
    (math.pi, 0.0, 0.0, 0.0),
    (0.0, math.pi / 2, 0.0, 0.0),
    (0.0, 0.0, 2 * math.pi, 0.0),
    (math.pi, 0.0, 0.0, math.pi),
    (0.3, 0.0, 0.0, -0.3),
])
def test_solve_kstar_special_inputs(gamma):
    """Inputs that hit the degenerate branches (vanishing sines and cosines)."""
    # 2. Act
    delta = solve_kstar(gamma)

    # 3. Assert
    assert delta.is_canonical, delta.violations()
    assert _deviation(gamma, delta) < 1e-9


@pytest.mark.parametrize("n", [3, 4])
def test_extra_controls_keep_the_two_qubit_solution(gammas, n):
    for gamma in gammas[:5]:
        delta = solve_kstar(gamma)
        assert _deviation(gamma, delta, n) < 1e-9


def test_solve_kstar_requires_four_angles():
    with pytest.raises(InvalidInput):
        solve_kstar((0.1, 0.2, 0.3))


def test_legacy_conversion_round_trips_and_preserves_semantics(gammas):
    for gamma in gammas:
        # 1. Arrange
        delta = solve_kstar(gamma)

        # 2. Act
        old = kstar_old_from_new(delta)
        back = kstar_new_from_old(old)

        # 3. Assert
        assert old.is_canonical, old.violations()
        assert _deviation(gamma, old) < 1e-9
        assert back.as_tuple() == pytest.approx(delta.as_tuple(), abs=1e-12)


def test_conversions_refuse_non_canonical_tuples():
    with pytest.raises(InvalidInput):
        kstar_old_from_new(KstarAngles(d1=4.0))
    with pytest.raises(InvalidInput):
        kstar_new_from_old(KstarOldAngles(d4=0.0, d1=0.5))


def test_residual_above_the_solver_tolerance_fails(mocker):
    # 1. Arrange
    mocker.patch.object(AppConfig, "SOLVER_TOL", -1.0)

    # 2. Act & 3. Assert
    with pytest.raises(SolveFailure, match="residual"):
        solve_kstar((0.1, 0.2, 0.3, 0.4))


@pytest.mark.parametrize("delta, expected", [
    (KstarAngles(d1=PI, d4=1.0), ["δ1 must lie in [0, π)"]),
    (KstarAngles(d4=1.0, d7=2 * PI), ["δ7 must lie in [0, 2π)"]),
    (KstarAngles(d4=FOUR_PI), ["δ4 must lie in [0, 4π)"]),
    (KstarAngles(d2=0.5, d4=1.0, d6=0.5), ["δ3 = 0 and δ6 ≠ 0 require δ2 = 0"]),
    (KstarAngles(d1=0.5, d3=PI, d4=1.0), ["δ3 = π requires δ1 = 0"]),
    (KstarAngles(d1=0.5), ["δ4 ∈ {0, 2π} requires δ1 = δ3 = 0"]),
    (KstarAngles(d3=1.0, d4=2 * PI), ["δ4 ∈ {0, 2π} requires δ1 = δ3 = 0"]),
    (KstarAngles(d2=0.5, d3=1.0, d4=PI), ["δ4 ∈ {π, 3π} requires δ2 = 0"]),
    (KstarAngles(d2=0.5, d3=1.0, d4=3 * PI, d6=0.5), ["δ4 ∈ {π, 3π} requires δ2 = 0"]),
    (KstarAngles(d1=0.5, d4=PI), ["δ4 ∈ {π, 3π} and δ3 = 0 require δ1 = 0"]),
    (KstarAngles(d4=1.0, d5=0.5, d6=PI), ["δ6 ∈ {0, π} requires δ5 = 0"]),
    (KstarAngles(d4=1.0, d5=0.5), ["δ6 ∈ {0, π} requires δ5 = 0"]),
])
def test_violations_name_each_broken_clause(delta, expected):
    assert delta.violations() == expected


def test_half_turn_with_bare_phase_keeps_delta2():
    """
    With δ3 = δ6 = 0 and δ4 = π the |01⟩ row carries e^{i(δ1+δ2)} alone, so a
    phase on that row can only live in δ2.
    """
    # 1. Arrange
    gamma = (0.0, 0.5, 0.0, PI)

    # 2. Act
    delta = solve_kstar(gamma)

    # 3. Assert
    assert delta.as_tuple()[:4] == pytest.approx((0.0, 0.5, 0.0, PI), abs=1e-12)
    assert delta.d6 == 0.0
    assert delta.is_canonical
    assert _deviation(gamma, delta) < 1e-9
    assert kstar_old_from_new(delta).as_tuple()[8] == pytest.approx(0.5)

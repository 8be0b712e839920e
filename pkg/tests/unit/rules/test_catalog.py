# tests/unit/rules/test_catalog.py

import math

import numpy as np
import pytest

from app.circuits.gates import Theory, p, rx
from app.errors import BadParameters, UnknownRule
from app.rules.catalog import get_rule, instantiate, rules_for
from app.rules.schema import RuleInstance, RuleStatus, Side
from app.rules.soundness import soundness_check
from app.semantics.evaluator import eval_unitary


@pytest.mark.parametrize("theory, names", [
    (Theory.QC, {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K*"}),
    (Theory.QCISO, {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K*", "L", "M"}),
    (Theory.QCANCILLA, {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K2", "L", "M", "N"}),
    (Theory.QCGROUND, {"C", "D", "E", "F", "G", "H", "I", "J'", "K2", "L", "M", "O", "P", "Q", "R"}),
])
def test_each_theory_has_its_axioms(theory, names):
    # 2. Act
    axioms = {r.name for r in rules_for(theory)}

    # 3. Assert
    assert axioms == names


def test_retired_rules_are_listed_separately():
    retired = {r.name for r in rules_for(Theory.QC, (RuleStatus.RETIRED,))}
    assert retired == {"n", "o", "K*old"}


@pytest.mark.parametrize("alias, name", [
    ("J′", "J'"),
    ("K²", "K2"),
    ("Kstar", "K*"),
    ("K³", "K3"),
])
def test_aliases_resolve(alias, name):
    assert get_rule(alias).name == name


def test_unknown_rule_is_reported():
    with pytest.raises(UnknownRule, match="Z9"):
        get_rule("Z9")


def test_instantiate_builds_both_sides_with_given_angles():
    # 2. Act
    inst = instantiate("G", {"phi": 0.4})

    # 3. Assert
    assert inst.theory is Theory.QC
    assert inst.rhs.gates == (p(0.4, 0),)
    assert inst.side(Side.LHS).n_in == 2


def test_full_turn_rule_rejects_other_angles():
    with pytest.raises(BadParameters, match="2π"):
        instantiate("A", {"phi": 1.0})


def test_rule_outside_its_theories_is_rejected():
    with pytest.raises(BadParameters, match="not an equation"):
        instantiate("N", theory=Theory.QC)


def test_family_rule_checks_its_minimum_size():
    with pytest.raises(BadParameters, match="n ≥"):
        instantiate("K*", {"g1": 0.1, "g2": 0.2, "g3": 0.3, "g4": 0.4}, n=1)


def test_solver_filled_rule_solves_the_right_hand_angles():
    # 1. Arrange
    alphas = {"a1": 0.3, "a2": 1.2, "a3": -0.7}

    # 2. Act
    inst = instantiate("J", alphas)

    # 3. Assert
    assert set(inst.params) >= {"b0", "b1", "b2", "b3"}
    assert np.allclose(eval_unitary(inst.lhs), eval_unitary(inst.rhs), atol=1e-10)


def test_solver_filled_rule_refuses_non_canonical_right_hand_angles():
    with pytest.raises(BadParameters, match="not canonical"):
        instantiate("J", {"b0": 0.0, "b1": 0.5, "b2": math.pi, "b3": 0.0})


def test_soundness_check_flags_a_wrong_instance():
    # 1. Arrange
    inst = instantiate("G", {"phi": 0.4})
    broken = RuleInstance(inst.rule, inst.n, inst.theory, inst.params, inst.lhs,
                          inst.rhs.with_gates((rx(0.4, 0),)))

    # 2. Act
    entry = soundness_check(broken)

    # 3. Assert
    assert not entry.passed
    assert entry.deviation > 0.1


def test_ground_euler_rule_drops_the_global_phase():
    # 1. Arrange
    alphas = {"a1": 0.3, "a2": 1.1, "a3": 0.2}

    # 2. Act
    inst = instantiate("J′", alphas, theory=Theory.QCGROUND)

    # 3. Assert
    assert [g.kind.value for g in inst.rhs.gates] == ["P", "RX", "P"]
    assert "b0" not in inst.params
    assert soundness_check(inst).passed


@pytest.mark.parametrize("name, width", [("n", 2), ("o", 3)])
def test_retired_gadget_rules_commute_entangling_phases(name, width):
    # 1. Arrange
    angles = {"theta": 0.7, "theta2": 1.9}

    # 2. Act
    inst = instantiate(name, angles)
    u = eval_unitary(inst.lhs)

    # 3. Assert
    assert inst.lhs.n_in == width
    assert soundness_check(inst).passed
    assert not np.allclose(u, np.diag(np.diag(u)))
    assert inst.lhs.gates != inst.rhs.gates

import json

import numpy as np
import pytest

from app.circuits.gates import Theory
from app.circuits.sampling import random_unitary
from app.circuits.text_format import read_circuit
from app.config import AppConfig
from app.main import EXIT_PASS, main
from app.semantics.checks import max_deviation
from app.semantics.evaluator import eval_unitary
from app.semantics.matrix_io import write_matrix

# Mark all tests in this file as 'e2e'
pytestmark = pytest.mark.e2e

# Soundness runs here use the default tolerance; a loosened .env.test would hide failures.
assert AppConfig.TOL <= 1e-9, "E2E soundness checks require QCEQ_TOL <= 1e-9 in .env.test"


@pytest.mark.parametrize("theory", [t.value for t in Theory])
def test_every_theory_passes_a_full_soundness_run(theory, rng_seed, tmp_path):
    """Twenty draws per rule, families up to five wires, report written to disk."""
    # 1. Arrange
    report_path = tmp_path / f"{theory}.json"

    # 2. Act
    code = main(["check-rules", "--theory", theory, "--trials", "20", "--seed", str(rng_seed),
                 "--max-n", "5", "--report", str(report_path)])

    # 3. Assert
    report = json.loads(report_path.read_text())
    failing = [r["name"] for r in report["results"] if not r["passed"]]
    assert code == EXIT_PASS, failing
    assert report["seed"] == rng_seed
    assert report["max_deviation"] < 1e-9


def test_discard_construction_holds():
    # 2. Act
    code = main(["check-rules", "--theory", "qcground", "--discard-iso", "--max-n", "3"])

    # 3. Assert
    assert code == EXIT_PASS


def test_derived_identities_hold_in_every_theory():
    assert main(["identities", "--trials", "20", "--max-n", "5"]) == EXIT_PASS


def test_shipped_derivations_replay(capsys):
    # 2. Act
    code = main(["replay", "--format", "json"])

    # 3. Assert
    report = json.loads(capsys.readouterr().out)
    assert code == EXIT_PASS
    assert all(r["passed"] for r in report["results"])


def test_synthesize_then_check_equivalence(tmp_path, rng_seed):
    """A random three-qubit unitary survives synth → file → equiv against a second synthesis."""
    # 1. Arrange
    u = random_unitary(np.random.default_rng(rng_seed), 8)
    matrix = tmp_path / "u.txt"
    first, second = tmp_path / "a.qc", tmp_path / "b.qc"
    write_matrix(u, matrix)

    # 2. Act
    codes = [main(["synth", "--matrix", str(matrix), "--out", str(path)]) for path in (first, second)]
    equiv_code = main(["equiv", str(first), str(second)])

    # 3. Assert
    assert codes == [EXIT_PASS, EXIT_PASS]
    assert equiv_code == EXIT_PASS
    assert max_deviation(eval_unitary(read_circuit(first)), u) < 1e-8


def test_retired_rules_stay_sound():
    assert main(["check-rules", "--theory", "qc", "--retired", "--trials", "20", "--max-n", "5"]) == EXIT_PASS

import logging

import numpy as np

from app.circuits.circuit import Circuit
from app.circuits.gates import Theory, discard
from app.circuits.sampling import random_circuit
from app.config import AppConfig
from app.errors import QceqError
from app.models import Report, ResultEntry
from app.rules.catalog import rules_for
from app.rules.schema import Rule, RuleInstance, RuleStatus, instantiate_rule
from app.semantics.checks import max_deviation, resolve_tolerance
from app.semantics.evaluator import eval_cptp, eval_unitary, embed_in_ground
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Soundness")

# Family rules are checked on every wire count up to these caps.
FAMILY_MAX_N = 5
FAMILY_MAX_N_CPTP = 3


def semantics(c: Circuit) -> np.ndarray:
    if c.theory is Theory.QCGROUND:
        return eval_cptp(c)
    return eval_unitary(c)


def instance_deviation(inst: RuleInstance) -> float:
    return max_deviation(semantics(inst.lhs), semantics(inst.rhs))


def soundness_check(inst: RuleInstance, tol=None) -> ResultEntry:
    """Compares both sides of one instance in the semantics of its theory; never raises."""
    try:
        deviation = instance_deviation(inst)
    except QceqError as e:
        return ResultEntry(name=inst.rule.name, passed=False, details={"error": str(e), "n": inst.n})
    return ResultEntry(
        name=inst.rule.name,
        passed=deviation <= resolve_tolerance(tol),
        deviation=deviation,
        details={"n": inst.n, "theory": inst.theory.value, "params": inst.params},
    )


def _wire_counts(rule: Rule, theory: Theory, max_n: int | None) -> list[int]:
    if not rule.family:
        return [rule.default_n]
    cap = FAMILY_MAX_N_CPTP if theory is Theory.QCGROUND else FAMILY_MAX_N
    if max_n is not None:
        cap = min(cap, max_n)
    return list(range(rule.min_n, max(rule.min_n, cap) + 1))


def check_rule(rule: Rule, theory: Theory | None = None, trials: int | None = None,
               rng: np.random.Generator | None = None, tol=None, max_n: int | None = None) -> ResultEntry:
    """
    Draws `trials` random instances per wire count and keeps the worst deviation.
    """
    theory = rule.home if theory is None else Theory(theory)
    trials = AppConfig.TRIALS if trials is None else trials
    rng = np.random.default_rng(AppConfig.SEED) if rng is None else rng
    eps = resolve_tolerance(tol)
    worst = 0.0
    worst_params: dict = {}
    counts = _wire_counts(rule, theory, max_n)
    for n in counts:
        for _ in range(trials if rule.params else 1):
            try:
                inst = instantiate_rule(rule, n=n, theory=theory, rng=rng)
                deviation = instance_deviation(inst)
            except QceqError as e:
                logger.warning(f"Rule {rule.name} ({theory.value}, n={n}) could not be checked: {e}")
                return ResultEntry(name=rule.name, passed=False, details={"error": str(e), "n": n})
            if deviation >= worst:
                worst, worst_params = deviation, {"n": n, "params": inst.params}
    passed = worst <= eps
    if passed:
        logger.info(f"Rule {rule.name} sound in {theory.value} (max deviation {worst:.2e})")
    else:
        logger.warning(f"Rule {rule.name} FAILED in {theory.value}: deviation {worst:.3e} at {worst_params}")
    return ResultEntry(
        name=rule.name,
        passed=passed,
        deviation=worst,
        details={"theory": theory.value, "status": rule.status.value, "wire_counts": counts, "worst": worst_params},
    )


def check_theory(theory: Theory, trials: int | None = None, seed: int | None = None, tol=None,
                 statuses=(RuleStatus.AXIOM,), max_n: int | None = None) -> Report:
    """Soundness of every rule of `theory` with one of `statuses`."""
    theory = Theory(theory)
    seed = AppConfig.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    results = [check_rule(r, theory, trials, rng, tol, max_n) for r in rules_for(theory, statuses)]
    return Report.from_results(
        "check-rules", results, inputs={"theory": theory.value, "trials": trials or AppConfig.TRIALS}, seed=seed,
    )


def derived_identity_suite(theory: Theory | None = None, trials: int | None = None, seed: int | None = None,
                           tol=None, max_n: int | None = None) -> Report:
    """
    Checks the derived identities (and the retired rules) of `theory`, or of every
    theory when none is given.
    """
    seed = AppConfig.SEED if seed is None else seed
    rng = np.random.default_rng(seed)
    theories = [Theory(theory)] if theory is not None else list(Theory)
    statuses = (RuleStatus.IDENTITY, RuleStatus.RETIRED)
    results = []
    seen: set[str] = set()
    for t in theories:
        for rule in rules_for(t, statuses):
            if rule.name in seen:
                continue
            seen.add(rule.name)
            results.append(check_rule(rule, t, trials, rng, tol, max_n))
    inputs = {"theory": theory.value if theory is not None else "all", "trials": trials or AppConfig.TRIALS}
    return Report.from_results("identities", results, inputs=inputs, seed=seed)


def _discard_all(width: int) -> list:
    return [discard(0) for _ in range(width)]


def discard_iso_check(trials: int = 50, seed: int | None = None, max_inputs: int = 2, depth: int = 6,
                      tol=None) -> ResultEntry:
    """
    For random QCiso circuits U: n → m, discarding every output of U equals
    discarding every input, as superoperators.
    """
    rng = np.random.default_rng(AppConfig.SEED if seed is None else seed)
    worst = 0.0
    for _ in range(trials):
        n = int(rng.integers(0, max_inputs + 1))
        inits = int(rng.integers(0, 2))
        u = random_circuit(rng, n, depth, Theory.QCISO, inits=inits)
        ground = embed_in_ground(u)
        lhs = ground.with_gates(ground.gates + tuple(_discard_all(u.n_out)))
        rhs = Circuit(Theory.QCGROUND, n, tuple(_discard_all(n)))
        worst = max(worst, max_deviation(eval_cptp(lhs), eval_cptp(rhs)))
    passed = worst <= resolve_tolerance(tol)
    logger.info(f"Discard construction over {trials} random isometries: max deviation {worst:.2e}")
    return ResultEntry(name="discard-iso", passed=passed, deviation=worst, details={"trials": trials})

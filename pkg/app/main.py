import argparse
import logging
import sys
from contextlib import contextmanager
from pathlib import Path

from app.circuits.circuit import Circuit
from app.circuits.gates import Theory
from app.circuits.text_format import format_circuit, parse_angle, read_circuit, write_circuit
from app.config import AppConfig
from app.errors import ArityMismatch, DimensionCap, QceqError
from app.models import Report, ResultEntry
from app.rewriting.derivation import replay_report, shipped_derivations
from app.rewriting.engine import Direction, apply_rule, rewrite_pass
from app.rules.schema import RuleStatus
from app.rules.soundness import check_theory, derived_identity_suite, discard_iso_check
from app.semantics.checks import choi_matrix, is_cptp, is_isometry, is_unitary, max_deviation
from app.semantics.evaluator import eval_unitary, evaluate, unitary_superoperator
from app.semantics.matrix_io import format_matrix, read_matrix, write_matrix
from app.solvers.conversions import kstar_old_from_new
from app.solvers.euler import euler_xzx, euler_zxz
from app.solvers.kstar import kstar_lhs, kstar_rhs, solve_kstar
from app.synthesis.synth import RESIDUAL_TOL, synth_isometry, synth_unitary
from app.utils.logger_config import APP_LOGGER_NAME, configure_logging

logger = logging.getLogger(f"{APP_LOGGER_NAME}.Cli")

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


# --- Helpers ---

def _angles(text: str) -> list[float]:
    return [parse_angle(a) for a in text.split(",") if a.strip()]


def _ints(text: str) -> list[int]:
    return [int(w) for w in text.split(",") if w.strip()]


def _params(text: str) -> dict[str, float]:
    out = {}
    for item in text.split(","):
        if not item.strip():
            continue
        name, sep, value = item.partition(":")
        if not sep:
            raise argparse.ArgumentTypeError(f"expected name:angle, got {item!r}")
        out[name.strip()] = parse_angle(value)
    return out


def _load(path: str, theory: str | None) -> Circuit:
    c = read_circuit(path)
    return c.with_theory(Theory(theory)) if theory else c


@contextmanager
def _config_overrides(args: argparse.Namespace):
    """Applies --tol/--trials/--seed/--max-qubits to AppConfig for one invocation."""
    overrides = {
        "TOL": args.tol,
        "TRIALS": args.trials,
        "SEED": args.seed,
        "MAX_QUBITS": args.max_qubits,
    }
    saved = {key: getattr(AppConfig, key) for key in overrides}
    for key, value in overrides.items():
        if value is not None:
            setattr(AppConfig, key, value)
    try:
        yield
    finally:
        for key, value in saved.items():
            setattr(AppConfig, key, value)


# --- Subcommands ---

def cmd_eval(args) -> Report:
    c = _load(args.circuit, args.theory)
    kind, m = evaluate(c)
    if kind == "cptp":
        ok = is_cptp(m)
    elif kind == "unitary":
        ok = is_unitary(m)
    else:
        ok = is_isometry(m)
    superop = m if kind == "cptp" else unitary_superoperator(m)
    dump = choi_matrix(superop) if args.choi else m
    details = {"kind": kind, "shape": list(m.shape), "n_in": c.n_in, "n_out": c.n_out}
    if args.out:
        write_matrix(dump, args.out)
        details["out"] = args.out
    else:
        details["matrix"] = format_matrix(dump).splitlines()
    entry = ResultEntry(name=Path(args.circuit).name, passed=ok, details=details)
    return Report.from_results("eval", [entry], inputs={"circuit": args.circuit, "choi": args.choi})


def cmd_check_rules(args) -> Report:
    statuses = (RuleStatus.AXIOM, RuleStatus.RETIRED) if args.retired else (RuleStatus.AXIOM,)
    theory = Theory(args.theory or Theory.QC)
    report = check_theory(theory, statuses=statuses, max_n=args.max_n)
    if args.discard_iso:
        results = report.results + [discard_iso_check(seed=AppConfig.SEED)]
        report = Report.from_results(report.command, results, inputs=report.inputs, seed=report.seed)
    return report


def cmd_identities(args) -> Report:
    return derived_identity_suite(Theory(args.theory) if args.theory else None, max_n=args.max_n)


def cmd_apply(args) -> Report:
    c = _load(args.circuit, args.theory)
    details: dict = {"rule": args.rule, "direction": args.direction}
    if args.all:
        out, count = rewrite_pass(c, args.rule, args.direction, args.params, args.n)
        details["rewrites"] = count
    else:
        out = apply_rule(c, args.rule, args.direction, args.anchor, args.wires, args.params, args.n,
                         slack=AppConfig.ANCHOR_SLACK if args.anchor is not None else 0)
    deviation = None
    try:
        _, before = evaluate(c)
        _, after = evaluate(out)
        deviation = max_deviation(before, after)
    except DimensionCap as e:
        logger.warning(f"Skipping the semantic check of the rewrite: {e}")
    if args.out:
        write_circuit(out, args.out)
        details["out"] = args.out
    else:
        details["circuit"] = format_circuit(out).splitlines()
    passed = deviation is None or deviation <= AppConfig.TOL
    entry = ResultEntry(name=f"{args.rule} {args.direction}", passed=passed, deviation=deviation, details=details)
    return Report.from_results("apply", [entry], inputs={"circuit": args.circuit})


def cmd_replay(args) -> Report:
    paths = args.scripts or shipped_derivations()
    return replay_report(paths)


def cmd_solve_kstar(args) -> Report:
    gammas = args.gamma
    deltas = solve_kstar(gammas)
    deviation = max_deviation(eval_unitary(kstar_lhs(gammas)), eval_unitary(kstar_rhs(deltas)))
    details: dict = {"gamma": gammas, "delta": list(deltas.as_tuple()), "violations": deltas.violations()}
    if args.old:
        details["delta_old"] = list(kstar_old_from_new(deltas).as_tuple())
    entry = ResultEntry(
        name="K*", passed=deltas.is_canonical and deviation <= AppConfig.TOL, deviation=deviation, details=details,
    )
    return Report.from_results("solve-kstar", [entry], inputs={"gamma": gammas})


def cmd_euler(args) -> Report:
    u = read_matrix(args.matrix)
    angles = euler_xzx(u) if args.form == "xzx" else euler_zxz(u)
    deviation = max_deviation(angles.matrix(), u)
    entry = ResultEntry(
        name=f"euler-{args.form}",
        passed=angles.is_canonical and deviation <= AppConfig.TOL,
        deviation=deviation,
        details={"beta": list(angles.as_tuple()), "form": angles.form, "violations": angles.violations()},
    )
    return Report.from_results("euler", [entry], inputs={"matrix": args.matrix, "form": args.form})


def cmd_synth(args) -> Report:
    m = read_matrix(args.matrix)
    c = synth_unitary(m) if args.kind == "unitary" else synth_isometry(m)
    deviation = max_deviation(eval_unitary(c), m)
    details: dict = {"theory": c.theory.value, "gates": len(c.gates)}
    if args.out:
        write_circuit(c, args.out)
        details["out"] = args.out
    else:
        details["circuit"] = format_circuit(c).splitlines()
    entry = ResultEntry(name=f"synth-{args.kind}", passed=deviation <= RESIDUAL_TOL, deviation=deviation,
                        details=details)
    return Report.from_results("synth", [entry], inputs={"matrix": args.matrix, "kind": args.kind})


def cmd_equiv(args) -> Report:
    a, b = _load(args.left, args.theory), _load(args.right, args.theory)
    if a.theory is not b.theory:
        raise ArityMismatch(f"theories differ: {a.theory.value} vs {b.theory.value}")
    if (a.n_in, a.n_out) != (b.n_in, b.n_out):
        raise ArityMismatch(f"arities differ: {a.n_in}→{a.n_out} vs {b.n_in}→{b.n_out}")
    kind, left = evaluate(a)
    _, right = evaluate(b)
    deviation = max_deviation(left, right)
    entry = ResultEntry(name=f"{Path(args.left).name} = {Path(args.right).name}",
                        passed=deviation <= AppConfig.TOL, deviation=deviation, details={"kind": kind})
    return Report.from_results("equiv", [entry], inputs={"left": args.left, "right": args.right})


# --- Parser ---

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--theory", choices=[t.value for t in Theory], help="Circuit language override.")
    common.add_argument("--tol", type=float, help=f"Absolute tolerance (default {AppConfig.TOL}).")
    common.add_argument("--trials", type=int, help=f"Random draws per rule (default {AppConfig.TRIALS}).")
    common.add_argument("--seed", type=int, help=f"Random seed (default {AppConfig.SEED}).")
    common.add_argument("--max-qubits", type=int, help=f"Dimension cap (default {AppConfig.MAX_QUBITS}).")
    common.add_argument("--format", choices=("text", "json"), default="text", help="Report format on stdout.")
    common.add_argument("--report", metavar="PATH", help="Also write the JSON report to PATH.")
    common.add_argument("--log-level", help="Console log level (default LOG_LEVEL_CONSOLE).")

    parser = argparse.ArgumentParser(prog="qceq", description="Quantum circuit equational toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="Evaluate a circuit.")
    p.add_argument("circuit")
    p.add_argument("--choi", action="store_true", help="Dump the Choi matrix instead of the semantics.")
    p.add_argument("--out", help="Write the matrix to this file.")
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("check-rules", parents=[common], help="Semantic soundness of a theory's rules.")
    p.add_argument("--retired", action="store_true", help="Also check the retired rules.")
    p.add_argument("--discard-iso", action="store_true", help="Add the discard construction check.")
    p.add_argument("--max-n", type=int, help="Largest wire count for rule families.")
    p.set_defaults(handler=cmd_check_rules)

    p = sub.add_parser("identities", parents=[common], help="Check the derived identities.")
    p.add_argument("--max-n", type=int, help="Largest wire count for identity families.")
    p.set_defaults(handler=cmd_identities)

    p = sub.add_parser("apply", parents=[common], help="Apply a rule to a circuit.")
    p.add_argument("circuit")
    p.add_argument("--rule", required=True)
    p.add_argument("--direction", type=str.upper, default=Direction.L2R.value, choices=[d.value for d in Direction])
    p.add_argument("--anchor", type=int)
    p.add_argument("--wires", type=_ints)
    p.add_argument("--params", type=_params, help="name:angle,...")
    p.add_argument("--n", type=int, help="Wire count for rule families.")
    p.add_argument("--all", action="store_true", help="Rewrite every non-overlapping occurrence.")
    p.add_argument("--out", help="Write the rewritten circuit to this file.")
    p.set_defaults(handler=cmd_apply)

    p = sub.add_parser("replay", parents=[common], help="Replay derivation scripts.")
    p.add_argument("scripts", nargs="*", help="Scripts to replay (default: the shipped ones).")
    p.set_defaults(handler=cmd_replay)

    p = sub.add_parser("solve-kstar", parents=[common], help="Canonical K* angles.")
    p.add_argument("--gamma", type=_angles, required=True, help="γ1,γ2,γ3,γ4")
    p.add_argument("--old", action="store_true", help="Also print the legacy nine-angle form.")
    p.set_defaults(handler=cmd_solve_kstar)

    p = sub.add_parser("euler", parents=[common], help="Canonical Euler angles of a 2×2 unitary.")
    p.add_argument("--matrix", required=True)
    p.add_argument("--form", choices=("zxz", "xzx"), default="zxz")
    p.set_defaults(handler=cmd_euler)

    p = sub.add_parser("synth", parents=[common], help="Synthesize a circuit from a matrix.")
    p.add_argument("--matrix", required=True)
    p.add_argument("--kind", choices=("unitary", "isometry"), default="unitary")
    p.add_argument("--out", help="Write the circuit to this file.")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("equiv", parents=[common], help="Semantic equivalence of two circuits.")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(handler=cmd_equiv)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level)
    except ValueError as e:
        print(f"CRITICAL: Failed to configure logging: {e}. Exiting.", file=sys.stderr)
        return EXIT_USAGE

    with _config_overrides(args):
        try:
            report = args.handler(args)
        except (QceqError, OSError) as e:
            logger.debug(f"{args.command} aborted", exc_info=True)
            logger.error(f"{args.command}: {e}")
            return EXIT_USAGE
    report.seed = report.seed if report.seed is not None else args.seed

    if args.report:
        try:
            Path(args.report).write_text(report.to_json())
        except OSError as e:
            logger.error(f"{args.command}: cannot write report: {e}")
            return EXIT_USAGE
    print(report.to_json() if args.format == "json" else report.render_text())
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

"""
Rule schemas.

A rule is stated by two builders, functions mapping named angles (and, for rule
families, the wire count n) to gate lists. Builders must be affine in their
angles and produce the same gate skeleton for every value; `trace_templates`
relies on this to recover each side as data: gate templates whose angles are
affine expressions over the parameter names. The catalog instantiates rules
through the builders; the rewriter matches the templates.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from app.circuits.circuit import Circuit
from app.circuits.gates import Gate, GateKind, Theory
from app.errors import BadParameters
from app.utils.logger_config import APP_LOGGER_NAME

logger = logging.getLogger(f"{APP_LOGGER_NAME}.RuleSchema")

Builder = Callable[[Mapping[str, float], int], list[Gate]]


class RuleStatus(str, Enum):
    AXIOM = "axiom"
    RETIRED = "retired"
    IDENTITY = "identity"


class Side(str, Enum):
    LHS = "lhs"
    RHS = "rhs"

    @property
    def other(self) -> "Side":
        return Side.RHS if self is Side.LHS else Side.LHS


@dataclass(frozen=True)
class AngleExpr:
    """const + Σ coeff·param."""
    const: float = 0.0
    terms: tuple[tuple[str, float], ...] = ()

    def evaluate(self, params: Mapping[str, float]) -> float:
        return self.const + sum(coeff * params[name] for name, coeff in self.terms)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.terms)


@dataclass(frozen=True)
class GateTemplate:
    kind: GateKind
    targets: tuple[int, ...]
    controls: tuple[tuple[int, bool], ...] = ()
    angle: AngleExpr | None = None

    def instantiate(self, params: Mapping[str, float]) -> Gate:
        value = self.angle.evaluate(params) if self.angle is not None else 0.0
        return Gate(self.kind, self.targets, self.controls, value)


@dataclass(frozen=True)
class Pattern:
    """One side of a rule as data."""
    n_in: int
    templates: tuple[GateTemplate, ...]
    params: tuple[str, ...]

    def instantiate(self, params: Mapping[str, float], theory: Theory) -> Circuit:
        return Circuit(theory, self.n_in, tuple(t.instantiate(params) for t in self.templates))


def _skeleton(g: Gate) -> tuple:
    return g.kind, g.targets, g.controls


def trace_templates(builder: Builder, names: tuple[str, ...], n: int) -> tuple[GateTemplate, ...]:
    """
    Recovers affine gate templates from `builder` by evaluating it at the zero
    point and at each unit vector of the parameter space.

    Raises:
        ValueError: If the gate skeleton depends on the parameter values.
    """
    zero = {name: 0.0 for name in names}
    base = builder(zero, n)
    coeffs: list[list[tuple[str, float]]] = [[] for _ in base]
    for name in names:
        shifted = builder({**zero, name: 1.0}, n)
        if [_skeleton(g) for g in shifted] != [_skeleton(g) for g in base]:
            raise ValueError(f"builder skeleton changes with parameter {name!r}")
        for i, (g0, g1) in enumerate(zip(base, shifted)):
            c = round(g1.angle - g0.angle, 12)
            if c != 0:
                coeffs[i].append((name, c))
    return tuple(
        GateTemplate(
            g.kind, g.targets, g.controls,
            AngleExpr(g.angle, tuple(coeffs[i])) if g.has_angle else None,
        )
        for i, g in enumerate(base)
    )


def _no_solver(values: Mapping[str, float]) -> dict[str, float]:
    return {}


@dataclass(frozen=True)
class Rule:
    """
    An equation schema.

    `params` name the free angles of the left-hand side. When `rhs_params` is
    empty both sides share `params`; otherwise the right-hand angles are
    produced by `solve` from the left-hand ones, and `unsolve` maps right-hand
    angles back (given any hints the caller supplied).
    """
    name: str
    theories: tuple[Theory, ...]
    lhs: Builder
    rhs: Builder
    arity: Callable[[int], int]
    params: tuple[str, ...] = ()
    rhs_params: tuple[str, ...] = ()
    solve: Callable[[Mapping[str, float]], dict[str, float]] | None = None
    unsolve: Callable[[Mapping[str, float], Mapping[str, float]], dict[str, float]] | None = None
    canonical: Callable[[Mapping[str, float]], list[str]] | None = None
    validate: Callable[[Mapping[str, float]], None] | None = None
    sampler: Callable[[np.random.Generator], dict[str, float]] | None = None
    family: bool = False
    min_n: int = 1
    default_n: int = 1
    status: RuleStatus = RuleStatus.AXIOM
    matchable: bool = True
    description: str = field(default="", compare=False)

    @property
    def home(self) -> Theory:
        return self.theories[0]

    @property
    def solver_filled(self) -> bool:
        return bool(self.rhs_params)

    def side_params(self, side: Side) -> tuple[str, ...]:
        if side is Side.RHS and self.solver_filled:
            return self.rhs_params
        return self.params

    def builder(self, side: Side) -> Builder:
        return self.lhs if side is Side.LHS else self.rhs

    def resolve_n(self, n: int | None) -> int:
        if not self.family:
            return self.default_n
        n = self.default_n if n is None else n
        if n < self.min_n:
            raise BadParameters(f"{self.name} needs n ≥ {self.min_n}, got {n}")
        return n

    def pattern(self, side: Side, n: int | None = None) -> Pattern:
        return _pattern(self, side, self.resolve_n(n))

    def draw(self, rng: np.random.Generator) -> dict[str, float]:
        """Random left-hand angles, uniform in [−2π, 2π) unless the rule has its own sampler."""
        if self.sampler is not None:
            return self.sampler(rng)
        return {name: float(rng.uniform(-2 * math.pi, 2 * math.pi)) for name in self.params}

    def complete(self, given: Mapping[str, float], rng: np.random.Generator | None = None) -> dict[str, float]:
        """
        Fills every angle of both sides from a partial assignment.

        Left-hand angles may be given directly (right-hand ones are then solved) or,
        for solver-filled rules, the right-hand angles may be given alone and are
        checked for canonicity before being mapped back.

        Raises:
            BadParameters: On unknown names, missing angles, or non-canonical
                right-hand angles.
        """
        known = set(self.params) | set(self.rhs_params)
        unknown = set(given) - known
        if unknown:
            raise BadParameters(f"{self.name} has no parameter(s) {sorted(unknown)}")
        values = {k: float(v) for k, v in given.items()}
        has_rhs = self.solver_filled and all(name in values for name in self.rhs_params)
        if has_rhs:
            rhs = {name: values[name] for name in self.rhs_params}
            self._check_canonical(rhs)
            if not all(name in values for name in self.params):
                values.update(self.unsolve(rhs, values) if self.unsolve else {})
        missing = [name for name in self.params if name not in values]
        if missing:
            if rng is None:
                raise BadParameters(f"{self.name} needs values for {missing}")
            drawn = self.draw(rng)
            values.update({name: drawn[name] for name in missing})
        if self.validate is not None:
            self.validate(values)
        if self.solver_filled and not has_rhs:
            lhs_values = {name: values[name] for name in self.params}
            values.update((self.solve or _no_solver)(lhs_values))
        return values

    def _check_canonical(self, rhs: Mapping[str, float]) -> None:
        if self.canonical is None:
            return
        problems = self.canonical(rhs)
        if problems:
            raise BadParameters(f"{self.name}: right-hand angles are not canonical ({'; '.join(problems)})")


@lru_cache(maxsize=None)
def _pattern(rule: Rule, side: Side, n: int) -> Pattern:
    names = rule.side_params(side)
    templates = trace_templates(rule.builder(side), names, n)
    return Pattern(rule.arity(n), templates, names)


@dataclass(frozen=True)
class RuleInstance:
    """A rule with every angle bound and both sides built."""
    rule: Rule
    n: int
    theory: Theory
    params: dict[str, float]
    lhs: Circuit
    rhs: Circuit

    def side(self, side: Side) -> Circuit:
        return self.lhs if side is Side.LHS else self.rhs


def instantiate_rule(rule: Rule, params: Mapping[str, float] | None = None, n: int | None = None,
                     theory: Theory | None = None, rng: np.random.Generator | None = None) -> RuleInstance:
    """
    Builds both sides of `rule`.

    Raises:
        BadParameters: If the rule does not belong to `theory`, `n` is out of
            range, or the angles cannot be completed.
    """
    theory = rule.home if theory is None else Theory(theory)
    if theory not in rule.theories:
        raise BadParameters(f"{rule.name} is not an equation of {theory.value}")
    n = rule.resolve_n(n)
    values = rule.complete(params or {}, rng)
    width = rule.arity(n)
    lhs = Circuit(theory, width, tuple(rule.lhs(values, n)))
    rhs = Circuit(theory, width, tuple(rule.rhs(values, n)))
    return RuleInstance(rule, n, theory, values, lhs, rhs)

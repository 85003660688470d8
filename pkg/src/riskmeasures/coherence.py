"""Axiom checks for risk measures on finite families of random variables.

A check can only exhibit violations; a clean report means "coherent on this
family", nothing more.  Two kinds of random variable are understood:

* :class:`~riskmeasures.distributions.Position` -- a law only.  Sums need a
  joint law, which the caller supplies via ``combine`` (independence by
  default).
* a sequence of payoffs indexed by the states of a fixed finite space, as
  consumed by :class:`~riskmeasures.measures.ScenarioMeasure`.  Sums are
  state-wise.

``rho`` must be a pure function of its argument.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import singledispatch
from typing import Any, Callable, Iterable, Optional, Sequence

from . import distributions as dist
from .distributions import Position
from .errors import DimensionMismatch
from .exact import TOL, Number, to_number
from .measures import ScenarioMeasure

__all__ = [
    "Axiom",
    "AxiomReport",
    "Counterexample",
    "DEFAULT_SCALARS",
    "DEFAULT_SHIFTS",
    "check_homogeneity",
    "check_monotonicity",
    "check_subadditivity",
    "check_translation",
    "coherence_report",
    "evaluate_axiom",
    "is_coherent_on_family",
    "product_space",
    "stress_scenarios",
]

DEFAULT_SCALARS = (Fraction(0), Fraction(1, 2), Fraction(2), Fraction(3))
DEFAULT_SHIFTS = (Fraction(0), Fraction(-1), Fraction(1), Fraction(7, 2), Fraction(1000))


class Axiom(str, enum.Enum):
    MONOTONICITY = "monotonicity"
    POSITIVE_HOMOGENEITY = "positive_homogeneity"
    TRANSLATION_INVARIANCE = "translation_invariance"
    SUBADDITIVITY = "subadditivity"


@dataclass(frozen=True)
class Counterexample:
    inputs: tuple
    lhs: Number
    rhs: Number


@dataclass(frozen=True)
class AxiomReport:
    axiom: Axiom
    counterexamples: tuple[Counterexample, ...] = ()
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{self.axiom.value:<24} {status}  ({self.checked} checks"
        if not self.passed:
            first = self.counterexamples[0]
            line += f", {len(self.counterexamples)} violations; first: lhs={float(first.lhs):.10g} rhs={float(first.rhs):.10g}"
        return line + ")"


# -- operations on the two kinds of random variable ------------------------


@singledispatch
def scaled(x, lam: Fraction):
    return tuple(lam * to_number(v) for v in x)


@scaled.register
def _(x: Position, lam: Fraction):
    return dist.scale(x, lam)


@singledispatch
def shifted(x, a: Fraction):
    return tuple(to_number(v) + a for v in x)


@shifted.register
def _(x: Position, a: Fraction):
    return dist.shift(x, a)


@singledispatch
def lowest_payoff(x) -> Fraction:
    return min(to_number(v) for v in x)


@lowest_payoff.register
def _(x: Position) -> Fraction:
    return x.payoffs[0]


@singledispatch
def default_combine(x1, x2):
    if len(x1) != len(x2):
        raise DimensionMismatch("state-wise sum needs equal-length payoff vectors")
    return tuple(to_number(a) + to_number(b) for a, b in zip(x1, x2))


@default_combine.register
def _(x1: Position, x2: Position):
    return dist.independent_sum(x1, x2)


# -- checks -----------------------------------------------------------------


def evaluate_axiom(
    rho: Callable[[Any], Number], axiom: Axiom, inputs: tuple, combine: Optional[Callable] = None
) -> tuple[Number, Number]:
    """Both sides of the axiom's (in)equality on ``inputs``; used to check and to replay."""
    axiom = Axiom(axiom)
    if axiom is Axiom.MONOTONICITY:
        (x,) = inputs
        return rho(x), Fraction(0)
    if axiom is Axiom.POSITIVE_HOMOGENEITY:
        x, lam = inputs
        return rho(scaled(x, lam)), lam * rho(x)
    if axiom is Axiom.TRANSLATION_INVARIANCE:
        x, a = inputs
        return rho(shifted(x, a)), rho(x) - a
    x1, x2 = inputs
    combine = combine or default_combine
    return rho(combine(x1, x2)), rho(x1) + rho(x2)


def _violated(axiom: Axiom, lhs, rhs, tol) -> bool:
    if axiom in (Axiom.MONOTONICITY, Axiom.SUBADDITIVITY):
        return lhs > rhs + tol
    return abs(lhs - rhs) > tol


def _run(rho, axiom, cases, combine=None, tol=TOL) -> AxiomReport:
    bad = []
    n = 0
    for inputs in cases:
        n += 1
        lhs, rhs = evaluate_axiom(rho, axiom, inputs, combine)
        if _violated(axiom, lhs, rhs, tol):
            bad.append(Counterexample(inputs, lhs, rhs))
    return AxiomReport(axiom, tuple(bad), n)


def check_monotonicity(rho, family: Iterable, tol: float = TOL) -> AxiomReport:
    """``rho(X) <= 0`` for every member whose payoffs are all nonnegative."""
    cases = ((x,) for x in family if lowest_payoff(x) >= 0)
    return _run(rho, Axiom.MONOTONICITY, cases, tol=tol)


def check_homogeneity(rho, family: Iterable, scalars: Iterable = DEFAULT_SCALARS, tol: float = TOL) -> AxiomReport:
    scalars = [to_number(s) for s in scalars]
    if any(s < 0 for s in scalars):
        raise ValueError("homogeneity is only required for nonnegative scalars")
    cases = ((x, lam) for x in family for lam in scalars)
    return _run(rho, Axiom.POSITIVE_HOMOGENEITY, cases, tol=tol)


def check_translation(rho, family: Iterable, shifts: Iterable = DEFAULT_SHIFTS, tol: float = TOL) -> AxiomReport:
    shifts = [to_number(a) for a in shifts]
    cases = ((x, a) for x in family for a in shifts)
    return _run(rho, Axiom.TRANSLATION_INVARIANCE, cases, tol=tol)


def check_subadditivity(rho, pairs: Iterable[tuple], combine: Optional[Callable] = None, tol: float = TOL) -> AxiomReport:
    """``rho(X1 + X2) <= rho(X1) + rho(X2)``; ``combine`` builds ``X1 + X2``."""
    return _run(rho, Axiom.SUBADDITIVITY, (tuple(p) for p in pairs), combine, tol)


def coherence_report(
    rho,
    family: Sequence,
    scalars: Iterable = DEFAULT_SCALARS,
    shifts: Iterable = DEFAULT_SHIFTS,
    combine: Optional[Callable] = None,
    tol: float = TOL,
) -> list[AxiomReport]:
    """Run all four checks on ``family``.

    Monotonicity is also exercised on each member shifted up to a zero floor,
    and subadditivity on every unordered pair, a member with itself included
    (an independent copy for positions).
    """
    family = list(family)
    if not family:
        raise ValueError("family must be non-empty")
    floored = [shifted(x, -lowest_payoff(x)) for x in family]
    return [
        check_monotonicity(rho, family + floored, tol),
        check_homogeneity(rho, family, scalars, tol),
        check_translation(rho, family, shifts, tol),
        check_subadditivity(rho, itertools.combinations_with_replacement(family, 2), combine, tol),
    ]


def is_coherent_on_family(reports: Iterable[AxiomReport]) -> bool:
    return all(r.passed for r in reports)


# -- finite state spaces for scenario measures -------------------------------


def product_space(positions: Sequence[Position]) -> tuple[tuple[Fraction, ...], list[tuple[Fraction, ...]]]:
    """Joint state space of independent positions.

    Returns the reference probability of each joint state and, per position,
    its payoff vector over those states (states in lexicographic order of the
    positions' sorted outcomes).
    """
    states = list(itertools.product(*(p.outcomes for p in positions)))
    probs = []
    for state in states:
        q = Fraction(1)
        for _, qi in state:
            q *= qi
        probs.append(q)
    vectors = [tuple(state[i][0] for state in states) for i in range(len(positions))]
    return tuple(probs), vectors


def stress_scenarios(positions: Sequence[Position]) -> ScenarioMeasure:
    """Reference product law plus, per position, that law conditioned on the
    position's worst outcome."""
    probs, vectors = product_space(positions)
    scenarios = [probs]
    for vec in vectors:
        worst = min(vec)
        mass = sum(q for q, x in zip(probs, vec) if x == worst)
        scenarios.append(tuple(q / mass if x == worst else Fraction(0) for q, x in zip(probs, vec)))
    return ScenarioMeasure(scenarios)

"""Risk measures: VaR, tail conditional expectation, Maximum Loss, scenario measures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .distributions import LossDistribution, Position, QuantileConvention, partial_expectation, quantile
from .errors import DimensionMismatch, EmptyTail, ValidationError
from .exact import MASS_TOL, TOL, Number, NumberLike, from_json_value, to_json_value, to_number

__all__ = [
    "DEFAULT_LEVELS",
    "MeasureEntry",
    "MeasureVector",
    "ScenarioMeasure",
    "expected_loss",
    "is_var_acceptable",
    "max_loss",
    "measure_vector",
    "scenario_measure_eval",
    "tce",
    "var",
]

Distribution = Union[Position, LossDistribution]
SMALLEST = QuantileConvention.SMALLEST
DEFAULT_LEVELS = (Fraction(95, 100), Fraction(99, 100))


def var(dist: Distribution, alpha: NumberLike, convention=SMALLEST) -> Number:
    """Value at Risk, ``-q_alpha(X)``.

    The default ``smallest`` convention reads ``VaR_alpha`` as the capital that
    covers every loss except a tail of probability at most ``1 - alpha``.
    """
    return -quantile(dist, alpha, convention)


def is_var_acceptable(dist: Distribution, alpha: NumberLike, convention=SMALLEST) -> bool:
    return var(dist, alpha, convention) <= 0


def tce(dist: Distribution, alpha: NumberLike, convention=SMALLEST) -> Number:
    """Tail conditional expectation ``-E[X | X <= -VaR_alpha(X)]``.

    The conditioning event keeps the whole atom sitting at the VaR, so on
    atomic laws its probability may exceed ``1 - alpha``.  No atom splitting.
    """
    threshold = var(dist, alpha, convention)
    if isinstance(dist, Position):
        tail = [(x, q) for x, q in dist.outcomes if x <= -threshold]
        mass = sum((q for _, q in tail), Fraction(0))
        moment = -sum((x * q for x, q in tail), Fraction(0))
    else:
        mass, moment = partial_expectation(dist, threshold, math.inf)
    if mass <= 0:
        raise EmptyTail(f"no probability at or beyond VaR {threshold}")
    return moment / mass


def max_loss(dist: Distribution) -> Fraction:
    """Largest loss carried with nonzero probability (essential supremum)."""
    if isinstance(dist, Position):
        return -dist.payoffs[0]
    return dist.support_max


def expected_loss(dist: Distribution) -> Number:
    if isinstance(dist, Position):
        return -sum(x * q for x, q in dist.outcomes)
    return partial_expectation(dist)[1]


@dataclass(frozen=True)
class MeasureEntry:
    level: Fraction
    var: Number
    tce: Number


@dataclass(frozen=True)
class MeasureVector:
    """VaR and TCE at several levels plus Maximum Loss."""

    entries: tuple[MeasureEntry, ...]
    max_loss: Number
    convention: QuantileConvention = SMALLEST

    def __post_init__(self):
        levels = [e.level for e in self.entries]
        if any(not 0 < lv < 1 for lv in levels):
            raise ValidationError("measure levels must lie in (0, 1)")
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ValidationError("measure levels must be strictly increasing")
        for e in self.entries:
            if not (e.var <= e.tce + TOL and e.tce <= self.max_loss + TOL):
                raise ValidationError(
                    f"level {e.level}: expected VaR <= TCE <= ML, got {e.var}, {e.tce}, {self.max_loss}"
                )

    @property
    def levels(self) -> tuple[Fraction, ...]:
        return tuple(e.level for e in self.entries)

    def at(self, level: NumberLike) -> MeasureEntry:
        level = to_number(level)
        for e in self.entries:
            if e.level == level:
                return e
        raise KeyError(level)

    def items(self) -> list[tuple[str, Number]]:
        """Flat ``(name, value)`` list, VaRs first, then TCEs, then ML."""
        out = [(f"VaR {_pct(e.level)}", e.var) for e in self.entries]
        out += [(f"TCE {_pct(e.level)}", e.tce) for e in self.entries]
        out.append(("ML", self.max_loss))
        return out

    def to_dict(self) -> dict:
        return {
            "convention": self.convention.value,
            "entries": [
                {"level": to_json_value(e.level), "var": to_json_value(e.var), "tce": to_json_value(e.tce)}
                for e in self.entries
            ],
            "max_loss": to_json_value(self.max_loss),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MeasureVector":
        entries = tuple(
            MeasureEntry(to_number(e["level"]), from_json_value(e["var"]), from_json_value(e["tce"]))
            for e in data["entries"]
        )
        return cls(entries, from_json_value(data["max_loss"]), QuantileConvention.coerce(data["convention"]))


def _pct(level: Fraction) -> str:
    pct = level * 100
    return f"{pct.numerator}%" if pct.denominator == 1 else f"{float(pct):g}%"


def measure_vector(
    dist: Distribution, levels: Iterable[NumberLike] = DEFAULT_LEVELS, convention=SMALLEST
) -> MeasureVector:
    convention = QuantileConvention.coerce(convention)
    levels = sorted(to_number(lv) for lv in levels)
    entries = tuple(
        MeasureEntry(lv, var(dist, lv, convention), tce(dist, lv, convention)) for lv in levels
    )
    return MeasureVector(entries, max_loss(dist), convention)


@dataclass(frozen=True)
class ScenarioMeasure:
    """Coherent measure given by the worst expected loss over generalized scenarios.

    Each scenario is a probability vector over the same finite set of states.
    """

    scenarios: tuple[tuple[Fraction, ...], ...]

    def __init__(self, scenarios: Iterable[Iterable[NumberLike]]):
        rows = tuple(tuple(to_number(q) for q in row) for row in scenarios)
        if not rows:
            raise ValidationError("at least one scenario is required")
        width = len(rows[0])
        for row in rows:
            if len(row) != width or width == 0:
                raise DimensionMismatch("all scenarios must share one non-empty state set")
            if any(q < 0 for q in row):
                raise ValidationError("scenario probabilities must be nonnegative")
            if abs(sum(row) - 1) > MASS_TOL:
                raise ValidationError(f"scenario sums to {float(sum(row))!r}, not 1")
        object.__setattr__(self, "scenarios", rows)

    @property
    def n_states(self) -> int:
        return len(self.scenarios[0])

    @classmethod
    def unit_vectors(cls, n: int) -> "ScenarioMeasure":
        """One point-mass scenario per state; evaluates to the Maximum Loss."""
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    def __call__(self, payoffs: Sequence[NumberLike]) -> Fraction:
        return scenario_measure_eval(self, payoffs)


def scenario_measure_eval(m: ScenarioMeasure, payoffs: Sequence[NumberLike]) -> Fraction:
    """``max`` over scenarios of the expected loss ``sum(q_i * -payoff_i)``."""
    if len(payoffs) != m.n_states:
        raise DimensionMismatch(f"{len(payoffs)} payoffs for {m.n_states} states")
    xs = [to_number(x) for x in payoffs]
    return max(-sum(q * x for q, x in zip(row, xs)) for row in m.scenarios)

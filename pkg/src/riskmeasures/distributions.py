"""Exact loss distributions and discrete positions.

A :class:`Position` is a finite P&L random variable: a list of
``(payoff, probability)`` outcomes.  A :class:`LossDistribution` describes
losses ``L = -X`` as point masses plus piecewise-linear density segments, so
every integral needed by the risk measures has a closed form.

Quantiles are always quantiles of the P&L variable ``X``, whichever object is
passed in.  Two conventions are supported::

    smallest:  inf{x : P(X <= x) >= 1 - alpha}
    largest:   inf{x : P(X <= x) >  1 - alpha}
"""

from __future__ import annotations

import enum
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .errors import DegenerateSupport, MassError, NegativeScale, SizeError, ValidationError
from .exact import MASS_TOL, Number, NumberLike, sqrt, to_number

__all__ = [
    "DEFAULT_SIZE_CAP",
    "LossDistribution",
    "Position",
    "QuantileConvention",
    "Segment",
    "canonicalize",
    "cdf",
    "independent_sum",
    "l1_distance",
    "mean",
    "partial_expectation",
    "quantile",
    "scale",
    "shift",
    "to_loss",
]

DEFAULT_SIZE_CAP = 10**6


class QuantileConvention(str, enum.Enum):
    SMALLEST = "smallest"
    LARGEST = "largest"

    @classmethod
    def coerce(cls, value: Union[str, "QuantileConvention"]) -> "QuantileConvention":
        try:
            return cls(value)
        except ValueError:
            raise ValidationError(f"unknown quantile convention {value!r}") from None


def _pairs(items: Iterable) -> list[tuple[Fraction, Fraction]]:
    out = []
    for item in items:
        x, p = item
        out.append((to_number(x), to_number(p)))
    return out


def _merge(pairs: list[tuple[Fraction, Fraction]], what: str) -> tuple[tuple[Fraction, Fraction], ...]:
    if not pairs:
        raise ValidationError(f"{what} must be non-empty")
    merged: dict[Fraction, Fraction] = defaultdict(Fraction)
    for x, p in pairs:
        if p <= 0:
            raise MassError(f"{what} probability must be positive, got {p} at {x}")
        merged[x] += p
    return tuple(sorted(merged.items()))


@dataclass(frozen=True)
class Position:
    """Discrete P&L ``X``; outcomes are kept sorted by payoff with duplicates merged.

    >>> Position([(2_000_000, 0.95), (-1_000_000, 0.05)]).outcomes[0]
    (Fraction(-1000000, 1), Fraction(1, 20))
    """

    outcomes: tuple[tuple[Fraction, Fraction], ...]

    def __init__(self, outcomes: Iterable[tuple[NumberLike, NumberLike]]):
        merged = _merge(_pairs(outcomes), "position outcome")
        total = sum(p for _, p in merged)
        if total != 1:
            if abs(total - 1) > MASS_TOL:
                raise MassError(f"probabilities sum to {float(total)!r}, not 1")
            merged = tuple((x, p / total) for x, p in merged)
        object.__setattr__(self, "outcomes", merged)

    @classmethod
    def sure(cls, payoff: NumberLike) -> "Position":
        return cls([(payoff, 1)])

    @property
    def payoffs(self) -> tuple[Fraction, ...]:
        return tuple(x for x, _ in self.outcomes)

    @property
    def probabilities(self) -> tuple[Fraction, ...]:
        return tuple(p for _, p in self.outcomes)

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self):
        return iter(self.outcomes)


@dataclass(frozen=True)
class Segment:
    """Linear density from ``fa`` at ``a`` to ``fb`` at ``b``."""

    a: Fraction
    b: Fraction
    fa: Fraction
    fb: Fraction

    def __init__(self, a: NumberLike, b: NumberLike, fa: NumberLike, fb: NumberLike):
        a, b, fa, fb = map(to_number, (a, b, fa, fb))
        if not a < b:
            raise ValidationError(f"segment needs a < b, got [{a}, {b}]")
        if fa < 0 or fb < 0:
            raise ValidationError(f"segment density must be >= 0 on [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "fa", fa)
        object.__setattr__(self, "fb", fb)

    def density(self, x: Number) -> Number:
        return self.fa + (self.fb - self.fa) * (x - self.a) / (self.b - self.a)

    @property
    def mass(self) -> Fraction:
        return (self.b - self.a) * (self.fa + self.fb) / 2

    @property
    def carries_mass(self) -> bool:
        return self.fa > 0 or self.fb > 0

    def moments(self, lo: Number, hi: Number) -> tuple[Number, Number]:
        """Mass and first moment of the segment restricted to ``[lo, hi]``."""
        u, v = max(self.a, lo), min(self.b, hi)
        if not u < v:
            return Fraction(0), Fraction(0)
        fu, fv = self.density(u), self.density(v)
        m = (u + v) / 2
        # Simpson's rule is exact for the quadratic x * f(x).
        mass = (v - u) * (fu + fv) / 2
        moment = (v - u) * (u * fu + 4 * m * self.density(m) + v * fv) / 6
        return mass, moment


@dataclass(frozen=True)
class LossDistribution:
    """Mixed loss law: point masses plus piecewise-linear density segments."""

    atoms: tuple[tuple[Fraction, Fraction], ...]
    segments: tuple[Segment, ...]

    def __init__(self, atoms: Iterable = (), segments: Iterable = ()):
        atom_pairs = _pairs(atoms)
        merged = _merge(atom_pairs, "atom") if atom_pairs else ()
        segs = tuple(s if isinstance(s, Segment) else Segment(*s) for s in segments)
        segs = tuple(sorted(segs, key=lambda s: (s.a, s.b)))
        for left, right in zip(segs, segs[1:]):
            if right.a < left.b:
                raise ValidationError(
                    f"segments [{left.a}, {left.b}] and [{right.a}, {right.b}] overlap"
                )
        total = sum((p for _, p in merged), Fraction(0)) + sum((s.mass for s in segs), Fraction(0))
        if abs(total - 1) > MASS_TOL:
            raise MassError(f"total mass is {float(total)!r}, not 1")
        object.__setattr__(self, "atoms", merged)
        object.__setattr__(self, "segments", segs)

    def density(self, x: Number) -> Number:
        """Continuous density at ``x`` (atoms excluded); right segment wins at a shared knot."""
        value = Fraction(0)
        for s in self.segments:
            if s.a <= x < s.b or (x == s.b and s is self.segments[-1]):
                value = s.density(x)
        return value

    def breakpoints(self) -> list[Fraction]:
        pts = {x for x, _ in self.atoms}
        for s in self.segments:
            pts.update((s.a, s.b))
        return sorted(pts)

    @property
    def support_min(self) -> Fraction:
        lows = [x for x, _ in self.atoms] + [s.a for s in self.segments if s.carries_mass]
        return min(lows)

    @property
    def support_max(self) -> Fraction:
        highs = [x for x, _ in self.atoms] + [s.b for s in self.segments if s.carries_mass]
        return max(highs)


def canonicalize(p: Union[Position, Iterable]) -> Position:
    """Sorted, duplicate-free form of a position; raises :class:`MassError` on bad mass."""
    if isinstance(p, Position):
        return Position(p.outcomes)
    return Position(p)


def to_loss(p: Position) -> LossDistribution:
    return LossDistribution(atoms=[(-x, q) for x, q in p.outcomes])


def cdf(dist: LossDistribution, x: NumberLike) -> Number:
    """``P(L <= x)``; right-continuous, atoms count fully at their location."""
    x = to_number(x)
    total = sum((q for loc, q in dist.atoms if loc <= x), Fraction(0))
    for s in dist.segments:
        total += s.moments(s.a, x)[0]
    return total


def partial_expectation(
    dist: LossDistribution, lo: Number = -math.inf, hi: Number = math.inf
) -> tuple[Number, Number]:
    """Mass and first moment of ``dist`` on the closed interval ``[lo, hi]``."""
    if lo > hi:
        raise ValidationError(f"empty interval [{lo}, {hi}]")
    mass, moment = Fraction(0), Fraction(0)
    for loc, q in dist.atoms:
        if lo <= loc <= hi:
            mass += q
            moment += q * loc
    for s in dist.segments:
        dm, dx = s.moments(lo, hi)
        mass += dm
        moment += dx
    return mass, moment


def mean(dist: Union[LossDistribution, Position]) -> Number:
    """Expected loss (for a position: expected payoff)."""
    if isinstance(dist, Position):
        return sum(x * q for x, q in dist.outcomes)
    return partial_expectation(dist)[1]


def _position_quantile(p: Position, level: Fraction, strict: bool) -> Fraction:
    cum = Fraction(0)
    for x, q in p.outcomes:
        cum += q
        if cum > level or (not strict and cum >= level):
            return x
    raise DegenerateSupport(f"no outcome reaches cumulative mass {level}")


def _segment_over(dist: LossDistribution, u: Fraction, v: Fraction) -> Segment | None:
    for s in dist.segments:
        if s.a <= u and v <= s.b:
            return s
    return None


def _loss_threshold(dist: LossDistribution, tail: Fraction, strict: bool) -> Number:
    """``sup{l : P(L >= l) >= tail}`` (``>`` when ``strict``)."""

    def enough(mass):
        return mass > tail if strict else mass >= tail

    atom_mass = dict(dist.atoms)
    pts = dist.breakpoints()
    above = Fraction(0)  # P(L > current breakpoint)
    for k in range(len(pts) - 1, -1, -1):
        v = pts[k]
        at_v = above + atom_mass.get(v, 0)
        if enough(at_v):
            return v
        if k == 0:
            break
        u = pts[k - 1]
        seg = _segment_over(dist, u, v)
        m = seg.moments(u, v)[0] if seg is not None else Fraction(0)
        if m > 0 and enough(at_v + m):
            need = tail - at_v
            if need >= m:
                return u
            fv, fu = seg.density(v), seg.density(u)
            slope = (fu - fv) / (v - u)
            # mass within distance t below v is fv*t + slope*t^2/2
            t = 2 * need / (fv + sqrt(fv * fv + 2 * slope * need))
            return v - t
        above = at_v + m
    raise DegenerateSupport(f"no loss level carries tail mass {tail}")


def quantile(
    dist: Union[Position, LossDistribution],
    alpha: NumberLike,
    convention: Union[str, QuantileConvention] = QuantileConvention.SMALLEST,
) -> Number:
    """Alpha-quantile of the P&L ``X`` under the chosen convention.

    For a :class:`LossDistribution` the P&L is ``X = -L``.
    """
    alpha = to_number(alpha)
    if not 0 < alpha < 1:
        raise ValidationError(f"alpha must lie in (0, 1), got {alpha}")
    strict = QuantileConvention.coerce(convention) is QuantileConvention.LARGEST
    if isinstance(dist, Position):
        return _position_quantile(dist, 1 - alpha, strict)
    # P(X <= x) = P(L >= -x)
    return -_loss_threshold(dist, 1 - alpha, strict)


def independent_sum(p1: Position, p2: Position, cap: int = DEFAULT_SIZE_CAP) -> Position:
    """Law of ``X1 + X2`` for independent positions (discrete convolution)."""
    acc: dict[Fraction, Fraction] = defaultdict(Fraction)
    for x1, q1 in p1.outcomes:
        for x2, q2 in p2.outcomes:
            acc[x1 + x2] += q1 * q2
            if len(acc) > cap:
                raise SizeError(f"convolution exceeds {cap} outcomes")
    return Position(acc.items())


def scale(p: Position, lam: NumberLike) -> Position:
    lam = to_number(lam)
    if lam < 0:
        raise NegativeScale(f"scale factor must be >= 0, got {lam}")
    return Position((lam * x, q) for x, q in p.outcomes)


def shift(p: Position, a: NumberLike) -> Position:
    a = to_number(a)
    return Position((x + a, q) for x, q in p.outcomes)


def l1_distance(d1: LossDistribution, d2: LossDistribution) -> Fraction:
    """Exact ``int |f1 - f2|`` plus the absolute difference of atom masses."""
    a1, a2 = dict(d1.atoms), dict(d2.atoms)
    total = sum((abs(a1.get(x, 0) - a2.get(x, 0)) for x in set(a1) | set(a2)), Fraction(0))
    knots = sorted({k for d in (d1, d2) for s in d.segments for k in (s.a, s.b)})

    def dens(d, u, v, x):
        seg = _segment_over(d, u, v)
        return seg.density(x) if seg is not None else Fraction(0)

    for u, v in zip(knots, knots[1:]):
        gu = dens(d1, u, v, u) - dens(d2, u, v, u)
        gv = dens(d1, u, v, v) - dens(d2, u, v, v)
        if gu * gv >= 0:
            total += (v - u) * (abs(gu) + abs(gv)) / 2
        else:
            # linear difference changes sign at z
            z = u + (v - u) * gu / (gu - gv)
            total += ((z - u) * abs(gu) + (v - z) * abs(gv)) / 2
    return total

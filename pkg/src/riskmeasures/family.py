"""Tail constructions on ``[c, d]`` and families that share a measure vector.

The tail ``[c, d]`` carries mass ``1 - level``; everything else sits in a single
body atom strictly below ``c`` so the quantiles at every spec level fall
inside the tail.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .distributions import LossDistribution, Segment, l1_distance
from .errors import CapacityError, SpecError
from .exact import TOL, Number, NumberLike, to_number
from .measures import measure_vector

__all__ = [
    "DiscriminationReport",
    "MIN_SEPARATION",
    "TailSpec",
    "band_perturbation",
    "discriminate",
    "indistinguishable_family",
    "min_pairwise_l1",
    "triangular_tail",
    "uniform_tail",
]

MIN_SEPARATION = Fraction(1, 1000)

# Unit shape of a perturbation on a band, as (fraction of width, value).
# Central tent up, two half-width tents down: zero area, even about the midpoint.
_SHAPE = (
    (Fraction(0), 0),
    (Fraction(1, 8), -1),
    (Fraction(1, 4), 0),
    (Fraction(1, 2), 1),
    (Fraction(3, 4), 0),
    (Fraction(7, 8), -1),
    (Fraction(1), 0),
)


@dataclass(frozen=True)
class TailSpec:
    """Tail region ``[c, d]`` holding mass ``1 - level``.

    ``inner_starts`` pins where deeper tails begin, e.g. ``((0.99, 4),)``
    puts the top 1% of losses on ``[4, d]``.
    """

    c: Fraction
    d: Fraction
    level: Fraction
    inner_starts: tuple[tuple[Fraction, Fraction], ...] = ()
    body_offset: Fraction = Fraction(1)

    def __init__(self, c, d, level, inner_starts: Iterable = (), body_offset: NumberLike = 1):
        c, d, level, body_offset = map(to_number, (c, d, level, body_offset))
        inner = tuple(sorted((to_number(lv), to_number(s)) for lv, s in inner_starts))
        if not c < d:
            raise SpecError(f"tail needs c < d, got c={c}, d={d}")
        if not 0 < level < 1:
            raise SpecError(f"level must lie in (0, 1), got {level}")
        if body_offset <= 0:
            raise SpecError("body atom must sit strictly below c")
        prev_level, prev_start = level, c
        for lv, s in inner:
            if not lv > prev_level or not lv < 1:
                raise SpecError(f"inner level {lv} must be in ({prev_level}, 1)")
            if not prev_start < s < d:
                raise SpecError(f"inner start {s} must lie in ({prev_start}, {d})")
            prev_level, prev_start = lv, s
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "inner_starts", inner)
        object.__setattr__(self, "body_offset", body_offset)

    @property
    def levels(self) -> tuple[Fraction, ...]:
        return (self.level,) + tuple(lv for lv, _ in self.inner_starts)

    @property
    def tail_mass(self) -> Fraction:
        return 1 - self.level

    def bands(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        """``(start, end, mass)`` of each band between consecutive tail starts."""
        starts = [self.c] + [s for _, s in self.inner_starts]
        ends = starts[1:] + [self.d]
        levels = list(self.levels) + [Fraction(1)]
        return [(s, e, levels[i + 1] - levels[i]) for i, (s, e) in enumerate(zip(starts, ends))]

    def body_atom(self) -> tuple[Fraction, Fraction]:
        return self.c - self.body_offset, self.level


def uniform_tail(spec: TailSpec) -> LossDistribution:
    """Constant density on each band; a single constant density when there are no inner starts.

    At ``spec.level`` VaR = c, TCE = (c + d) / 2 and ML = d.
    """
    segments = [Segment(s, e, m / (e - s), m / (e - s)) for s, e, m in spec.bands()]
    return LossDistribution([spec.body_atom()], segments)


def triangular_tail(spec: TailSpec, apex: NumberLike) -> LossDistribution:
    """Triangle on ``[c, d]`` peaking at ``apex``; tail centroid is ``(c + d + apex) / 3``."""
    apex = to_number(apex)
    if spec.inner_starts:
        raise SpecError("a triangular tail fixes its own inner quantiles; inner_starts not allowed")
    if not spec.c <= apex <= spec.d:
        raise SpecError(f"apex {apex} outside [{spec.c}, {spec.d}]")
    height = 2 * spec.tail_mass / (spec.d - spec.c)
    segments = []
    if apex > spec.c:
        segments.append(Segment(spec.c, apex, 0, height))
    if apex < spec.d:
        segments.append(Segment(apex, spec.d, height, 0))
    return LossDistribution([spec.body_atom()], segments)


def band_perturbation(u: Fraction, v: Fraction, amplitude: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Knots ``(x, delta)`` of a zero-mass, zero-first-moment perturbation of ``[u, v]``."""
    w = v - u
    return [(u + t * w, amplitude * g) for t, g in _SHAPE]


def _perturbed(spec: TailSpec, band: int, amplitude: Fraction) -> LossDistribution:
    segments = []
    for i, (s, e, m) in enumerate(spec.bands()):
        h = m / (e - s)
        if i != band:
            segments.append(Segment(s, e, h, h))
            continue
        knots = band_perturbation(s, e, amplitude)
        for (x0, g0), (x1, g1) in zip(knots, knots[1:]):
            segments.append(Segment(x0, x1, h + g0, h + g1))
    return LossDistribution([spec.body_atom()], segments)


def indistinguishable_family(
    spec: TailSpec, n: int, min_separation: NumberLike = MIN_SEPARATION
) -> list[LossDistribution]:
    """``n`` distinct laws sharing VaR and TCE at every spec level, and ML.

    Member 0 is :func:`uniform_tail`.  Member ``j`` adds the band perturbation
    with amplitude ``+a, -a, +2a, -2a, ...`` on the heaviest band, ``a`` chosen
    so the largest amplitude is half the band density.  Pairwise L1 distance
    is at least ``a * width / 2``.
    """
    if n < 1:
        raise SpecError("family size must be at least 1")
    base = uniform_tail(spec)
    if n == 1:
        return [base]
    min_separation = to_number(min_separation)
    bands = spec.bands()
    band = max(range(len(bands)), key=lambda i: bands[i][2])
    s, e, m = bands[band]
    steps = math.ceil((n - 1) / 2)
    step = (m / (e - s)) / 2 / steps
    if step * (e - s) / 2 < min_separation:
        raise CapacityError(
            f"{n} members cannot be kept {min_separation} apart in L1 with nonnegative density"
        )
    members = [base]
    for j in range(1, n):
        sign = 1 if j % 2 else -1
        members.append(_perturbed(spec, band, sign * math.ceil(j / 2) * step))
    return members


def min_pairwise_l1(dists: Sequence[LossDistribution]) -> Optional[Fraction]:
    pairs = itertools.combinations(dists, 2)
    return min((l1_distance(a, b) for a, b in pairs), default=None)


@dataclass(frozen=True)
class DiscriminationRow:
    name: str
    first: Number
    second: Number
    equal: bool


@dataclass(frozen=True)
class DiscriminationReport:
    rows: tuple[DiscriminationRow, ...]
    tolerance: float = TOL

    @property
    def all_equal(self) -> bool:
        return all(r.equal for r in self.rows)

    def distinguishing(self) -> list[str]:
        return [r.name for r in self.rows if not r.equal]

    def row(self, name: str) -> DiscriminationRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)


def discriminate(
    first: LossDistribution, second: LossDistribution, levels: Iterable[NumberLike] = (Fraction(95, 100),),
    tol: float = TOL,
) -> DiscriminationReport:
    """Compare two laws measure by measure."""
    levels = list(levels)
    mv1, mv2 = measure_vector(first, levels), measure_vector(second, levels)
    rows = tuple(
        DiscriminationRow(name, v1, v2, abs(v1 - v2) <= tol)
        for (name, v1), (_, v2) in zip(mv1.items(), mv2.items())
    )
    return DiscriminationReport(rows, tol)

"""Exact number handling.

Money and probabilities are carried as :class:`fractions.Fraction`.  Floats
coming from callers are read through their shortest ``repr`` so that ``0.95``
means 95/100 and not the nearest binary double.  The only place a float can
re-enter is a quantile that falls on an irrational root inside a sloped
density segment.
"""

from __future__ import annotations

import math
from decimal import Decimal
from fractions import Fraction
from typing import Union

Number = Union[Fraction, float]
NumberLike = Union[int, float, str, Fraction, Decimal]

# Comparison slack for values that may have passed through a float.
TOL = 1e-9
MASS_TOL = 1e-12


def to_number(value: NumberLike) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, floats (via ``repr``), Decimals, Fractions and strings such
    as ``"0.95"``, ``"5/3"`` or ``"-1e6"``.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(repr(value))
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise ValueError(f"non-finite number {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as a number")


def sqrt(x: Number) -> Number:
    """Square root that stays exact when ``x`` is a rational square."""
    if x < 0:
        raise ValueError("square root of a negative number")
    if isinstance(x, Fraction):
        num, den = x.numerator, x.denominator
        rn, rd = math.isqrt(num), math.isqrt(den)
        if rn * rn == num and rd * rd == den:
            return Fraction(rn, rd)
    return math.sqrt(x)


def _is_finite_decimal(q: Fraction) -> bool:
    d = q.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def format_number(x: Number) -> str:
    """Human-readable exact form: ``"3"``, ``"0.95"``, ``"5/3"`` or a float repr."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        if _is_finite_decimal(x):
            digits = 0
            d = x.denominator
            while d != 1:
                # each factor of 2 or 5 needs one more decimal place
                d //= math.gcd(d, 10)
                digits += 1
            scaled = abs(x.numerator) * 10**digits // x.denominator
            whole, frac = divmod(scaled, 10**digits)
            sign = "-" if x < 0 else ""
            return f"{sign}{whole}.{frac:0{digits}d}"
        return f"{x.numerator}/{x.denominator}"
    return repr(float(x))


def to_json_value(x: Number) -> int | str | float:
    """JSON encoding that round-trips exactly through :func:`from_json_value`."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return x.numerator
        return format_number(x)
    return float(x)


def from_json_value(v) -> Number:
    if isinstance(v, float):
        return v
    return to_number(v)

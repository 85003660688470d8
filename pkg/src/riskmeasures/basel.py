"""Basel I / 1996 amendment / Basel II capital adequacy.

Credit risk is a sum of risk-weighted exposures.  Capital is tiered: tier 2
counts up to the amount of tier 1 (i.e. at most half of the capital base),
and tier 3 counts only against the market-risk charge, and only once market
risk is part of the requirement.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Union

from .distributions import Position
from .errors import AccordMismatch, DiscretionMissing, ValidationError
from .exact import Number, NumberLike, to_number
from .measures import var

__all__ = [
    "Accord",
    "AssetCategory",
    "CapitalAssessment",
    "CapitalStructure",
    "DISCRETION_WEIGHTS",
    "Exposure",
    "MINIMUM_RATIO",
    "SovereignRating",
    "capital_ratio",
    "eligible_capital",
    "market_risk_charge",
    "risk_weight",
    "risk_weighted_assets",
    "sovereign_weight",
]

MINIMUM_RATIO = Fraction(8, 100)
DISCRETION_WEIGHTS = (Fraction(0), Fraction(10, 100), Fraction(20, 100), Fraction(50, 100))


class Accord(str, enum.Enum):
    BASEL1 = "basel1"
    AMENDMENT1996 = "amendment1996"
    BASEL2 = "basel2"


class AssetCategory(str, enum.Enum):
    # 0%
    CASH = "cash"
    DOMESTIC_SOVEREIGN = "domestic_sovereign"  # national currency, funded in it
    OECD_SOVEREIGN = "oecd_sovereign"
    OECD_COLLATERALIZED = "oecd_collateralized"
    # 0, 10, 20 or 50% at national discretion
    DOMESTIC_PUBLIC_SECTOR = "domestic_public_sector"
    # 20%
    MULTILATERAL_DEVELOPMENT_BANK = "multilateral_development_bank"
    OECD_BANK = "oecd_bank"
    NON_OECD_BANK_SHORT = "non_oecd_bank_short"  # residual maturity <= 1 year
    FOREIGN_OECD_PUBLIC_SECTOR = "foreign_oecd_public_sector"
    CASH_IN_COLLECTION = "cash_in_collection"
    # 50%
    RESIDENTIAL_MORTGAGE = "residential_mortgage"
    # 100%
    PRIVATE_SECTOR = "private_sector"
    NON_OECD_BANK_LONG = "non_oecd_bank_long"
    NON_OECD_SOVEREIGN = "non_oecd_sovereign"  # unless national-currency funded
    PUBLIC_SECTOR_COMMERCIAL = "public_sector_commercial"
    FIXED_ASSETS = "fixed_assets"
    REAL_ESTATE_INVESTMENTS = "real_estate_investments"
    BANK_CAPITAL_INSTRUMENTS = "bank_capital_instruments"
    OTHER = "other"


_BASEL1_WEIGHTS: dict[AssetCategory, Optional[Fraction]] = {
    AssetCategory.CASH: Fraction(0),
    AssetCategory.DOMESTIC_SOVEREIGN: Fraction(0),
    AssetCategory.OECD_SOVEREIGN: Fraction(0),
    AssetCategory.OECD_COLLATERALIZED: Fraction(0),
    AssetCategory.DOMESTIC_PUBLIC_SECTOR: None,
    AssetCategory.MULTILATERAL_DEVELOPMENT_BANK: Fraction(1, 5),
    AssetCategory.OECD_BANK: Fraction(1, 5),
    AssetCategory.NON_OECD_BANK_SHORT: Fraction(1, 5),
    AssetCategory.FOREIGN_OECD_PUBLIC_SECTOR: Fraction(1, 5),
    AssetCategory.CASH_IN_COLLECTION: Fraction(1, 5),
    AssetCategory.RESIDENTIAL_MORTGAGE: Fraction(1, 2),
    AssetCategory.PRIVATE_SECTOR: Fraction(1),
    AssetCategory.NON_OECD_BANK_LONG: Fraction(1),
    AssetCategory.NON_OECD_SOVEREIGN: Fraction(1),
    AssetCategory.PUBLIC_SECTOR_COMMERCIAL: Fraction(1),
    AssetCategory.FIXED_ASSETS: Fraction(1),
    AssetCategory.REAL_ESTATE_INVESTMENTS: Fraction(1),
    AssetCategory.BANK_CAPITAL_INSTRUMENTS: Fraction(1),
    AssetCategory.OTHER: Fraction(1),
}

SOVEREIGN_CATEGORIES = frozenset(
    {AssetCategory.DOMESTIC_SOVEREIGN, AssetCategory.OECD_SOVEREIGN, AssetCategory.NON_OECD_SOVEREIGN}
)


class SovereignRating(enum.IntEnum):
    """Rating bands in order of decreasing credit quality, unrated last."""

    AAA_TO_AA_MINUS = 0
    A_PLUS_TO_A_MINUS = 1
    BBB_PLUS_TO_BBB_MINUS = 2
    BB_PLUS_TO_B_MINUS = 3
    BELOW_B_MINUS = 4
    UNRATED = 5

    @classmethod
    def from_grade(cls, grade: Union[str, "SovereignRating", None]) -> "SovereignRating":
        """Band of an agency grade such as ``"AA-"``, ``"BBB+"``, ``"CCC"`` or ``None``."""
        if isinstance(grade, SovereignRating):
            return grade
        if grade is None:
            return cls.UNRATED
        g = grade.strip().upper()
        if g in cls.__members__:
            return cls[g]
        if g in ("", "NR", "UNRATED"):
            return cls.UNRATED
        try:
            return _GRADE_BANDS[g]
        except KeyError:
            raise ValidationError(f"unknown rating grade {grade!r}") from None


_GRADE_BANDS = {}
for _band, _grades in (
    (SovereignRating.AAA_TO_AA_MINUS, "AAA AA+ AA AA-"),
    (SovereignRating.A_PLUS_TO_A_MINUS, "A+ A A-"),
    (SovereignRating.BBB_PLUS_TO_BBB_MINUS, "BBB+ BBB BBB-"),
    (SovereignRating.BB_PLUS_TO_B_MINUS, "BB+ BB BB- B+ B B-"),
    (SovereignRating.BELOW_B_MINUS, "CCC+ CCC CCC- CC C D SD"),
):
    for _g in _grades.split():
        _GRADE_BANDS[_g] = _band

_SOVEREIGN_WEIGHTS = {
    SovereignRating.AAA_TO_AA_MINUS: Fraction(0),
    SovereignRating.A_PLUS_TO_A_MINUS: Fraction(1, 5),
    SovereignRating.BBB_PLUS_TO_BBB_MINUS: Fraction(1, 2),
    SovereignRating.BB_PLUS_TO_B_MINUS: Fraction(1),
    SovereignRating.BELOW_B_MINUS: Fraction(3, 2),
    SovereignRating.UNRATED: Fraction(1),
}


@dataclass(frozen=True)
class Exposure:
    category: AssetCategory
    amount: Fraction
    discretion_weight: Optional[Fraction] = None
    rating: Optional[SovereignRating] = None
    # Free-form annotations (e.g. a default probability); never affect the weight.
    metadata: Mapping = field(default_factory=dict, compare=False)

    def __init__(self, category, amount, discretion_weight=None, rating=None, metadata=None):
        try:
            category = AssetCategory(category)
        except ValueError:
            raise ValidationError(f"unknown asset category {category!r}") from None
        amount = to_number(amount)
        if amount < 0:
            raise ValidationError("exposure amount must be >= 0")
        needs = _BASEL1_WEIGHTS[category] is None
        if discretion_weight is not None:
            if not needs:
                raise ValidationError(f"{category.value} takes no discretion weight")
            discretion_weight = to_number(discretion_weight)
            if discretion_weight not in DISCRETION_WEIGHTS:
                raise ValidationError(f"discretion weight must be one of 0, 0.1, 0.2, 0.5")
        if rating is not None:
            if category not in SOVEREIGN_CATEGORIES:
                raise ValidationError(f"{category.value} is not a sovereign claim; rating not allowed")
            rating = SovereignRating.from_grade(rating)
        object.__setattr__(self, "category", category)
        object.__setattr__(self, "amount", amount)
        object.__setattr__(self, "discretion_weight", discretion_weight)
        object.__setattr__(self, "rating", rating)
        object.__setattr__(self, "metadata", dict(metadata or {}))


@dataclass(frozen=True)
class CapitalStructure:
    tier1: Fraction = Fraction(0)
    tier2: Fraction = Fraction(0)
    tier3: Fraction = Fraction(0)

    def __init__(self, tier1=0, tier2=0, tier3=0):
        values = [to_number(t) for t in (tier1, tier2, tier3)]
        if any(t < 0 for t in values):
            raise ValidationError("capital tiers must be nonnegative")
        for name, t in zip(("tier1", "tier2", "tier3"), values):
            object.__setattr__(self, name, t)


@dataclass(frozen=True)
class CapitalAssessment:
    credit_risk: Fraction
    market_risk: Fraction
    operational_risk: Fraction
    eligible_capital: Fraction
    ratio: Number
    accord: Accord

    @property
    def passed(self) -> bool:
        return self.ratio >= MINIMUM_RATIO

    @property
    def denominator(self) -> Fraction:
        return self.credit_risk + self.market_risk + self.operational_risk


def risk_weight(e: Exposure, accord: Union[Accord, str] = Accord.BASEL1) -> Fraction:
    """Weight of one exposure; under Basel II sovereign claims use their rating band."""
    accord = Accord(accord)
    if accord is Accord.BASEL2 and e.category in SOVEREIGN_CATEGORIES:
        return sovereign_weight(SovereignRating.UNRATED if e.rating is None else e.rating)
    w = _BASEL1_WEIGHTS[e.category]
    if w is None:
        if e.discretion_weight is None:
            raise DiscretionMissing(f"{e.category.value} needs a national-discretion weight")
        return e.discretion_weight
    return w


def sovereign_weight(rating: Union[SovereignRating, str, None]) -> Fraction:
    return _SOVEREIGN_WEIGHTS[SovereignRating.from_grade(rating)]


def risk_weighted_assets(exposures: Iterable[Exposure], accord: Union[Accord, str] = Accord.BASEL1) -> Fraction:
    return sum((e.amount * risk_weight(e, accord) for e in exposures), Fraction(0))


def eligible_capital(
    capital: CapitalStructure, include_tier3: bool = False, tier3_limit: Optional[NumberLike] = None
) -> Fraction:
    """Tier 1 plus tier 2 capped at tier 1, plus (optionally) tier 3 up to ``tier3_limit``."""
    total = capital.tier1 + min(capital.tier2, capital.tier1)
    if include_tier3:
        t3 = capital.tier3 if tier3_limit is None else min(capital.tier3, to_number(tier3_limit))
        total += t3
    return total


def capital_ratio(
    capital: CapitalStructure,
    credit: NumberLike,
    market: NumberLike = 0,
    operational: NumberLike = 0,
    accord: Union[Accord, str] = Accord.BASEL2,
) -> CapitalAssessment:
    """Capital over the accord's risk denominator; passes at 8% or more.

    A zero denominator yields an infinite ratio.
    """
    accord = Accord(accord)
    credit, market, operational = map(to_number, (credit, market, operational))
    if min(credit, market, operational) < 0:
        raise ValidationError("risk amounts must be nonnegative")
    if accord is Accord.BASEL1 and (market or operational):
        raise AccordMismatch("Basel I has no market or operational risk term")
    if accord is Accord.AMENDMENT1996 and operational:
        raise AccordMismatch("the 1996 amendment has no operational risk term")
    counted = eligible_capital(capital, include_tier3=accord is not Accord.BASEL1, tier3_limit=market)
    denominator = credit + market + operational
    ratio = counted / denominator if denominator else float("inf")
    return CapitalAssessment(credit, market, operational, counted, ratio, accord)


def market_risk_charge(p: Position, alpha: NumberLike = Fraction(95, 100)) -> Number:
    """Trading-book charge from a (10-day) P&L position: ``max(0, VaR_alpha)``; no multiplier."""
    return max(Fraction(0), var(p, alpha))

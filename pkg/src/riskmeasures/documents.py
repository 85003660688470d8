"""JSON specification documents and CSV plot data.

Every document is a JSON object with a ``kind`` and optional ``name`` /
``description``.  Numbers may be JSON numbers or strings; strings accept
fractions (``"5/3"``).  JSON numbers are read from their decimal text, so
``0.95`` is exactly 95/100.

=================  ===========================================================
kind               payload fields
=================  ===========================================================
position           ``outcomes``: ``[[payoff, probability], ...]``
loss_distribution  ``atoms``: ``[[loss, probability], ...]``,
                   ``segments``: ``[[a, b, density_a, density_b], ...]``
tail_spec          ``c``, ``d``, ``level``, optional ``inner_starts``
                   (``[[level, start], ...]``), ``body_offset``,
                   ``shape`` (``"uniform"`` | ``"triangular"``) and ``apex``
exposures          ``exposures``: list of ``{category, amount,
                   discretion_weight?, rating?, metadata?}``
capital            ``tier1``, ``tier2``, ``tier3``, optional ``credit_risk``,
                   ``market_risk``, ``operational_risk``
=================  ===========================================================
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import IO, Any, Optional, Union

from .basel import CapitalStructure, Exposure
from .distributions import LossDistribution, Position
from .errors import ParseError, ValidationError
from .exact import to_json_value, to_number
from .family import TailSpec, triangular_tail, uniform_tail

__all__ = [
    "CapitalDocument",
    "KINDS",
    "SpecDocument",
    "TailShape",
    "emit_plot_data",
    "parse_spec",
    "serialize",
]

KINDS = ("position", "loss_distribution", "tail_spec", "exposures", "capital")


@dataclass(frozen=True)
class TailShape:
    spec: TailSpec
    shape: str = "uniform"
    apex: Optional[Fraction] = None

    def __post_init__(self):
        if self.shape not in ("uniform", "triangular"):
            raise ValidationError(f"unknown tail shape {self.shape!r}")
        if (self.shape == "triangular") != (self.apex is not None):
            raise ValidationError("apex is required for, and only for, triangular tails")

    def distribution(self) -> LossDistribution:
        if self.shape == "triangular":
            return triangular_tail(self.spec, self.apex)
        return uniform_tail(self.spec)


@dataclass(frozen=True)
class CapitalDocument:
    structure: CapitalStructure
    credit_risk: Optional[Fraction] = None
    market_risk: Fraction = Fraction(0)
    operational_risk: Fraction = Fraction(0)


@dataclass(frozen=True)
class SpecDocument:
    kind: str
    payload: Any
    metadata: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.metadata.get("name", self.kind)


def _num(data: dict, key: str, default=None) -> Optional[Fraction]:
    if key not in data:
        if default is None:
            raise ParseError("missing number", field=key)
        return default
    try:
        return to_number(data[key])
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {data[key]!r}", field=key) from None


def _rows(data: dict, key: str, width: int, required=True) -> list[list[Fraction]]:
    rows = data.get(key)
    if rows is None:
        if required:
            raise ParseError("missing list", field=key)
        return []
    if not isinstance(rows, list):
        raise ParseError("expected a list", field=key)
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise ParseError(f"expected a list of {width} numbers", field=f"{key}[{i}]")
        try:
            out.append([to_number(v) for v in row])
        except (TypeError, ValueError, ZeroDivisionError):
            raise ParseError(f"not a number in {row!r}", field=f"{key}[{i}]") from None
    return out


def _payload(kind: str, data: dict):
    if kind == "position":
        return Position(_rows(data, "outcomes", 2))
    if kind == "loss_distribution":
        return LossDistribution(_rows(data, "atoms", 2, required=False), _rows(data, "segments", 4, required=False))
    if kind == "tail_spec":
        spec = TailSpec(
            _num(data, "c"),
            _num(data, "d"),
            _num(data, "level"),
            _rows(data, "inner_starts", 2, required=False),
            _num(data, "body_offset", Fraction(1)),
        )
        apex = _num(data, "apex") if "apex" in data else None
        return TailShape(spec, data.get("shape", "triangular" if apex is not None else "uniform"), apex)
    if kind == "exposures":
        items = data.get("exposures")
        if not isinstance(items, list):
            raise ParseError("expected a list", field="exposures")
        out = []
        for i, item in enumerate(items):
            if not isinstance(item, dict) or "category" not in item:
                raise ParseError("expected an object with a category", field=f"exposures[{i}]")
            try:
                out.append(
                    Exposure(
                        item["category"],
                        _num(item, "amount"),
                        _num(item, "discretion_weight") if "discretion_weight" in item else None,
                        item.get("rating"),
                        item.get("metadata"),
                    )
                )
            except ValidationError as exc:
                raise type(exc)(f"exposures[{i}]: {exc}") from None
        return tuple(out)
    if kind == "capital":
        return CapitalDocument(
            CapitalStructure(_num(data, "tier1", 0), _num(data, "tier2", 0), _num(data, "tier3", 0)),
            _num(data, "credit_risk") if "credit_risk" in data else None,
            _num(data, "market_risk", Fraction(0)),
            _num(data, "operational_risk", Fraction(0)),
        )
    raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", field="kind")


def parse_spec(source: Union[str, Path, IO[str]]) -> SpecDocument:
    """Read and validate a document from a path, an open stream, or JSON text."""
    if isinstance(source, Path):
        text = source.read_text()
    elif isinstance(source, str):
        if source.lstrip().startswith(("{", "[")) or "\n" in source:
            text = source
        else:
            try:
                text = Path(source).read_text()
            except OSError as exc:
                raise ParseError(f"cannot read {source}: {exc.strerror}") from None
    else:
        text = source.read()
    try:
        data = json.loads(text, parse_float=Fraction, parse_int=Fraction)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(data, dict):
        raise ParseError("document must be a JSON object")
    kind = data.get("kind")
    if not isinstance(kind, str):
        raise ParseError("missing document kind", field="kind")
    metadata = {k: data[k] for k in ("name", "description") if isinstance(data.get(k), str)}
    return SpecDocument(kind, _payload(kind, data), metadata)


def _plain(value):
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if isinstance(value, Fraction):
        # metadata numbers were JSON numbers; keep them numbers when a float is exact
        if value.denominator == 1:
            return int(value)
        if Fraction(repr(float(value))) == value:
            return float(value)
        return to_json_value(value)
    return value


def _to_dict(doc: SpecDocument) -> dict:
    p = doc.payload
    j = to_json_value
    out: dict = {"kind": doc.kind, **doc.metadata}
    if doc.kind == "position":
        out["outcomes"] = [[j(x), j(q)] for x, q in p.outcomes]
    elif doc.kind == "loss_distribution":
        out["atoms"] = [[j(x), j(q)] for x, q in p.atoms]
        out["segments"] = [[j(s.a), j(s.b), j(s.fa), j(s.fb)] for s in p.segments]
    elif doc.kind == "tail_spec":
        s = p.spec
        out.update(c=j(s.c), d=j(s.d), level=j(s.level), body_offset=j(s.body_offset), shape=p.shape)
        if s.inner_starts:
            out["inner_starts"] = [[j(lv), j(x)] for lv, x in s.inner_starts]
        if p.apex is not None:
            out["apex"] = j(p.apex)
    elif doc.kind == "exposures":
        items = []
        for e in p:
            item = {"category": e.category.value, "amount": j(e.amount)}
            if e.discretion_weight is not None:
                item["discretion_weight"] = j(e.discretion_weight)
            if e.rating is not None:
                item["rating"] = e.rating.name
            if e.metadata:
                item["metadata"] = _plain(e.metadata)
            items.append(item)
        out["exposures"] = items
    elif doc.kind == "capital":
        c = p.structure
        out.update(tier1=j(c.tier1), tier2=j(c.tier2), tier3=j(c.tier3))
        if p.credit_risk is not None:
            out["credit_risk"] = j(p.credit_risk)
        out.update(market_risk=j(p.market_risk), operational_risk=j(p.operational_risk))
    return out


def serialize(doc: SpecDocument) -> str:
    return json.dumps(_to_dict(doc), indent=2)


def emit_plot_data(dist: LossDistribution, resolution: int = 11, stream: Optional[IO[str]] = None) -> str:
    """CSV ``x,density,atom_mass``: atom rows first, then ``resolution``
    evenly spaced samples per segment, endpoints included."""
    if resolution < 2:
        raise ValidationError("resolution must be at least 2")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "density", "atom_mass"])
    for x, q in dist.atoms:
        writer.writerow([repr(float(x)), "", repr(float(q))])
    for s in dist.segments:
        for i in range(resolution):
            x = s.a + (s.b - s.a) * Fraction(i, resolution - 1)
            writer.writerow([repr(float(x)), repr(float(s.density(x))), ""])
    text = buf.getvalue()
    if stream is not None:
        stream.write(text)
    return text

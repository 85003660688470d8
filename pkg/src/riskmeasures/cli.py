"""Command-line front end.

Exit status: 0 on success, 2 when an input fails validation, 3 when a
quantity cannot be computed.
"""

from __future__ import annotations

import json
import sys
from fractions import Fraction
from typing import Callable

import click

from . import basel, coherence
from .distributions import LossDistribution, Position, QuantileConvention, to_loss
from .documents import SpecDocument, TailShape, emit_plot_data, parse_spec
from .errors import ComputationError, ValidationError
from .exact import Number, format_number, to_json_value, to_number
from .family import discriminate, indistinguishable_family, min_pairwise_l1
from .measures import DEFAULT_LEVELS, expected_loss, max_loss, measure_vector, tce, var

EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except ValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_VALIDATION)
        except ComputationError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_COMPUTATION)


def _fmt(x: Number) -> str:
    text = format_number(x)
    if isinstance(x, Fraction) and x.denominator != 1 and "/" in text:
        return f"{text} (~{float(x):.10g})"
    return text


def _levels(text: str | None, default=DEFAULT_LEVELS) -> list[Fraction]:
    if not text:
        return list(default)
    try:
        return [to_number(t) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise ValidationError(f"cannot read levels {text!r}") from None


def _load(path: str) -> SpecDocument:
    return parse_spec(path)


def _distribution(doc: SpecDocument):
    if doc.kind in ("position", "loss_distribution"):
        return doc.payload
    if doc.kind == "tail_spec":
        return doc.payload.distribution()
    raise ValidationError(f"a {doc.kind} document does not describe a loss distribution")


def _as_loss(dist) -> LossDistribution:
    return to_loss(dist) if isinstance(dist, Position) else dist


def _emit_json(obj) -> None:
    click.echo(json.dumps(obj, indent=2, sort_keys=True))


convention_option = click.option(
    "--convention",
    type=click.Choice([c.value for c in QuantileConvention]),
    default=QuantileConvention.SMALLEST.value,
    show_default=True,
    help="Quantile convention used for VaR.",
)
json_option = click.option("--json", "as_json", is_flag=True, help="Structured JSON output.")


@click.group(cls=_Group)
@click.version_option(package_name="artifact")
def cli():
    """Exact VaR / TCE / Maximum Loss measure vectors and Basel capital ratios."""


@cli.command()
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.option("--levels", help="Comma-separated levels, default 0.95,0.99.")
@convention_option
@json_option
def measures(spec, levels, convention, as_json):
    """Measure vector of the distribution in SPEC."""
    doc = _load(spec)
    dist = _distribution(doc)
    lv = _levels(levels)
    mv = measure_vector(dist, lv, convention)
    other_conv = (
        QuantileConvention.LARGEST if mv.convention is QuantileConvention.SMALLEST else QuantileConvention.SMALLEST
    )
    other = measure_vector(dist, lv, other_conv)
    diverging = [e.level for e, o in zip(mv.entries, other.entries) if e.var != o.var]
    if as_json:
        out = {"name": doc.name, "measures": mv.to_dict(), "diverging_levels": [to_json_value(x) for x in diverging]}
        if diverging:
            out["other_convention"] = other.to_dict()
        _emit_json(out)
        return
    click.echo(f"{doc.name} ({doc.kind}), {mv.convention.value}-quantile convention")
    for name, value in mv.items():
        click.echo(f"  {name:<10} {_fmt(value)}")
    for e, o in zip(mv.entries, other.entries):
        if e.var != o.var:
            click.echo(
                f"  note: conventions diverge at {format_number(e.level)}: "
                f"{other_conv.value} convention gives VaR {_fmt(o.var)}, TCE {_fmt(o.tce)}"
            )


@cli.command()
@click.argument("first", type=click.Path(exists=True, dir_okay=False))
@click.argument("second", type=click.Path(exists=True, dir_okay=False))
@click.option("--levels", help="Comma-separated levels, default 0.95.")
@json_option
def compare(first, second, levels, as_json):
    """Compare two distributions measure by measure."""
    d1, d2 = _load(first), _load(second)
    report = discriminate(_as_loss(_distribution(d1)), _as_loss(_distribution(d2)), _levels(levels, [Fraction(95, 100)]))
    if as_json:
        _emit_json(
            {
                "first": d1.name,
                "second": d2.name,
                "rows": [
                    {"measure": r.name, "first": to_json_value(r.first), "second": to_json_value(r.second), "equal": r.equal}
                    for r in report.rows
                ],
                "all_equal": report.all_equal,
            }
        )
        return
    click.echo(f"{'measure':<10} {d1.name:>24} {d2.name:>24}  equal")
    for r in report.rows:
        click.echo(f"{r.name:<10} {_fmt(r.first):>24} {_fmt(r.second):>24}  {'yes' if r.equal else 'NO'}")
    if report.all_equal:
        click.echo("indistinguishable on these measures")
    else:
        click.echo("distinguished by: " + ", ".join(report.distinguishing()))


@cli.command()
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.option("--n", "count", type=int, default=4, show_default=True, help="Family size.")
@click.option("--levels", help="Levels to report; default: the levels of the tail spec.")
@json_option
def family(spec, count, levels, as_json):
    """Distinct distributions sharing every measure of a tail spec."""
    doc = _load(spec)
    if doc.kind != "tail_spec":
        raise ValidationError("family needs a tail_spec document")
    tail = doc.payload.spec
    members = indistinguishable_family(tail, count)
    lv = _levels(levels, tail.levels)
    vectors = [measure_vector(m, lv) for m in members]
    first = vectors[0].items()
    equal = all(
        abs(v - v0) <= 1e-9 for mv in vectors[1:] for (_, v), (_, v0) in zip(mv.items(), first)
    )
    sep = min_pairwise_l1(members)
    if as_json:
        _emit_json(
            {
                "name": doc.name,
                "members": [mv.to_dict() for mv in vectors],
                "all_measures_equal": equal,
                "min_pairwise_l1": to_json_value(sep) if sep is not None else None,
            }
        )
        return
    names = [name for name, _ in first]
    click.echo("member " + " ".join(f"{n:>12}" for n in names))
    for i, mv in enumerate(vectors):
        click.echo(f"{i:>6} " + " ".join(f"{format_number(v):>12}" for _, v in mv.items()))
    click.echo(f"all measures equal: {'yes' if equal else 'NO'}")
    if sep is not None:
        click.echo(f"smallest pairwise L1 density distance: {_fmt(sep)}")


def _measure(name: str, level: Fraction) -> Callable:
    if name == "var":
        return lambda p: var(p, level)
    if name == "tce":
        return lambda p: tce(p, level)
    if name == "ml":
        return max_loss
    if name == "expected":
        return expected_loss
    raise ValidationError(f"unknown measure {name!r}")


@cli.command(name="coherence")
@click.argument("specs", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--measure", "measure_name", type=click.Choice(["var", "tce", "ml", "scenario", "expected"]), default="var",
    show_default=True,
)
@click.option("--level", default="0.95", show_default=True, help="Level for var/tce.")
@json_option
def coherence_cmd(specs, measure_name, level, as_json):
    """Check the coherence axioms on a family of positions.

    With --measure scenario the positions are placed on their independent
    product space and measured by the worst expected loss over the reference
    law and the law conditioned on each position's worst outcome.
    """
    docs = [_load(s) for s in specs]
    if any(d.kind != "position" for d in docs):
        raise ValidationError("coherence checks take position documents")
    family = [d.payload for d in docs]
    if measure_name == "scenario":
        rho = coherence.stress_scenarios(family)
        _, members = coherence.product_space(family)
        reports = coherence.coherence_report(rho, members)
    else:
        rho = _measure(measure_name, to_number(level))
        reports = coherence.coherence_report(rho, family)
    ok = coherence.is_coherent_on_family(reports)
    if as_json:
        _emit_json(
            {
                "measure": measure_name,
                "coherent_on_family": ok,
                "axioms": [
                    {
                        "axiom": r.axiom.value,
                        "passed": r.passed,
                        "checks": r.checked,
                        "violations": [
                            {"lhs": to_json_value(c.lhs), "rhs": to_json_value(c.rhs)} for c in r.counterexamples
                        ],
                    }
                    for r in reports
                ],
            }
        )
        return
    for r in reports:
        click.echo(r.summary())
    click.echo(f"coherent on family: {'yes' if ok else 'no'}")


@cli.command(name="basel")
@click.argument("capital", type=click.Path(exists=True, dir_okay=False))
@click.argument("exposures", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option(
    "--accord", type=click.Choice([a.value for a in basel.Accord]), default="basel2", show_default=True
)
@click.option("--market", help="Market-risk charge (overrides the capital document).")
@click.option("--operational", help="Operational-risk charge (overrides the capital document).")
@click.option(
    "--trading-book", type=click.Path(exists=True, dir_okay=False),
    help="Position document for the 10-day trading-book P&L; its 95% VaR becomes the market charge.",
)
@json_option
def basel_cmd(capital, exposures, accord, market, operational, trading_book, as_json):
    """Capital ratio under the chosen accord."""
    cap = _load(capital)
    if cap.kind != "capital":
        raise ValidationError("first argument must be a capital document")
    doc = cap.payload
    if exposures:
        exp = _load(exposures)
        if exp.kind != "exposures":
            raise ValidationError("second argument must be an exposures document")
        credit = basel.risk_weighted_assets(exp.payload, accord)
    elif doc.credit_risk is not None:
        credit = doc.credit_risk
    else:
        raise ValidationError("no credit risk: give an exposures document or credit_risk in the capital document")
    market_charge = doc.market_risk
    if trading_book:
        tb = _load(trading_book)
        if tb.kind != "position":
            raise ValidationError("--trading-book needs a position document")
        market_charge = basel.market_risk_charge(tb.payload)
    if market is not None:
        market_charge = to_number(market)
    op = to_number(operational) if operational is not None else doc.operational_risk
    result = basel.capital_ratio(doc.structure, credit, market_charge, op, accord)
    if as_json:
        _emit_json(
            {
                "accord": result.accord.value,
                "credit_risk": to_json_value(result.credit_risk),
                "market_risk": to_json_value(result.market_risk),
                "operational_risk": to_json_value(result.operational_risk),
                "eligible_capital": to_json_value(result.eligible_capital),
                "ratio": to_json_value(result.ratio) if result.ratio != float("inf") else None,
                "pass": result.passed,
            }
        )
        return
    click.echo(f"accord:            {result.accord.value}")
    click.echo(f"credit risk:       {_fmt(result.credit_risk)}")
    click.echo(f"market risk:       {_fmt(result.market_risk)}")
    click.echo(f"operational risk:  {_fmt(result.operational_risk)}")
    click.echo(f"eligible capital:  {_fmt(result.eligible_capital)}")
    ratio = "inf" if result.ratio == float("inf") else f"{float(result.ratio):.4%}"
    click.echo(f"ratio:             {ratio}  (minimum 8%)  {'PASS' if result.passed else 'FAIL'}")


@cli.command()
@click.argument("spec", type=click.Path(exists=True, dir_okay=False))
@click.option("--resolution", type=int, default=11, show_default=True, help="Samples per density segment.")
@click.option("--member", type=int, help="Plot member K of the indistinguishable family of a tail spec.")
@click.option("--n", "count", type=int, default=4, show_default=True, help="Family size used with --member.")
def plot(spec, resolution, member, count):
    """CSV plot data (x,density,atom_mass) for the loss density in SPEC."""
    doc = _load(spec)
    if member is not None:
        if doc.kind != "tail_spec":
            raise ValidationError("--member needs a tail_spec document")
        members = indistinguishable_family(doc.payload.spec, count)
        if not 0 <= member < len(members):
            raise ValidationError(f"member must be in [0, {len(members) - 1}]")
        dist = members[member]
    else:
        dist = _as_loss(_distribution(doc))
    click.echo(emit_plot_data(dist, resolution), nl=False)


def main(argv=None):
    return cli.main(args=argv, prog_name="riskmeasures")


if __name__ == "__main__":
    sys.exit(main())

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskmeasures.coherence import (
    Axiom,
    check_homogeneity,
    check_monotonicity,
    check_subadditivity,
    check_translation,
    coherence_report,
    default_combine,
    evaluate_axiom,
    is_coherent_on_family,
    product_space,
    stress_scenarios,
)
from riskmeasures.distributions import Position, mean
from riskmeasures.errors import DimensionMismatch
from riskmeasures.measures import ScenarioMeasure, expected_loss, max_loss, tce, var

from conftest import random_position

ASSET = Position([(2_000_000, "0.95"), (-1_000_000, "0.05")])
LOAN = Position([(0, "0.96"), (-1_000_000, "0.04")])


def var95(x):
    return var(x, F(95, 100))


def tce95(x):
    return tce(x, F(95, 100))


class TestBrokenMeasures:
    def test_expected_payoff_not_monotone(self):
        # the mean payoff of a nonnegative position is positive
        report = check_monotonicity(mean, [Position([(1, 0.5), (3, 0.5)])])
        assert not report.passed
        assert report.counterexamples[0].lhs == 2

    def test_var_plus_one_not_translation_invariant(self):
        report = check_translation(lambda x: var95(x) + 1, [ASSET])
        assert report.passed  # shifting cancels the constant
        assert not check_homogeneity(lambda x: var95(x) + 1, [ASSET]).passed

    def test_var_plus_one_flags_monotonicity(self):
        assert not check_monotonicity(lambda x: var95(x) + 1, [Position.sure(0)]).passed


class TestVar:
    def test_homogeneity_example(self):
        lhs, rhs = evaluate_axiom(var95, Axiom.POSITIVE_HOMOGENEITY, (ASSET, F(2)))
        assert lhs == rhs == 2_000_000

    def test_subadditivity_fails_on_loans(self):
        report = check_subadditivity(var95, [(LOAN, LOAN)])
        assert not report.passed
        cx = report.counterexamples[0]
        assert (cx.lhs, cx.rhs) == (1_000_000, 0)

    def test_other_axioms_hold_on_loans(self):
        reports = coherence_report(var95, [LOAN, ASSET])
        by_axiom = {r.axiom: r.passed for r in reports}
        assert by_axiom == {
            Axiom.MONOTONICITY: True,
            Axiom.POSITIVE_HOMOGENEITY: True,
            Axiom.TRANSLATION_INVARIANCE: True,
            Axiom.SUBADDITIVITY: False,
        }
        assert not is_coherent_on_family(reports)

    def test_counterexample_replays(self):
        report = check_subadditivity(var95, [(LOAN, LOAN)])
        cx = report.counterexamples[0]
        assert evaluate_axiom(var95, report.axiom, cx.inputs) == (cx.lhs, cx.rhs)


class TestMaxLoss:
    def test_translation(self):
        assert check_translation(max_loss, [ASSET], shifts=[5]).passed

    def test_coherent_on_positions(self):
        assert is_coherent_on_family(coherence_report(max_loss, [ASSET, LOAN, Position.sure(-3)]))


class TestScenario:
    def test_product_space_of_loans(self):
        probs, vectors = product_space([LOAN, LOAN])
        assert len(probs) == 4
        assert sum(probs) == 1
        assert [a + b for a, b in zip(*vectors)] == [-2_000_000, -1_000_000, -1_000_000, 0]

    def test_stress_measure_coherent_on_loans(self):
        m = stress_scenarios([LOAN, LOAN])
        _, vectors = product_space([LOAN, LOAN])
        assert is_coherent_on_family(coherence_report(m, vectors))

    def test_expected_loss_coherent(self):
        assert is_coherent_on_family(coherence_report(expected_loss, [ASSET, LOAN]))

    def test_vector_combine_mismatch(self):
        with pytest.raises(DimensionMismatch):
            default_combine((1, 2), (1, 2, 3))

    def test_random_families(self, rng):
        # 1000 families of three payoff vectors under random scenario sets
        for _ in range(1000):
            n = rng.randint(1, 5)
            scenarios = []
            for _ in range(rng.randint(1, 4)):
                w = [rng.randint(0, 9) for _ in range(n)]
                if not any(w):
                    w[0] = 1
                scenarios.append([F(x, sum(w)) for x in w])
            m = ScenarioMeasure(scenarios)
            family = [tuple(F(rng.randint(-400, 400), 4) for _ in range(n)) for _ in range(3)]
            assert is_coherent_on_family(coherence_report(m, family))


class TestTce:
    def test_conditional_definition_not_subadditive_on_loans(self):
        # the boundary atom is kept whole: one loan averages over L >= 0, so
        # TCE = 0.04e6 each, while the pair averages over L >= 1e6 (mass 0.0784)
        report = check_subadditivity(tce95, [(LOAN, LOAN)])
        assert not report.passed
        cx = report.counterexamples[0]
        assert (cx.lhs, cx.rhs) == (F(50_000_000, 49), 80_000)

    def test_homogeneity_and_translation(self, rng):
        family = [random_position(rng) for _ in range(200)]
        assert check_homogeneity(tce95, family).passed
        assert check_translation(tce95, family).passed
        assert check_monotonicity(tce95, [random_position(rng, nonnegative=True) for _ in range(200)]).passed


@given(st.lists(st.integers(-100, 100), min_size=2, max_size=6), st.data())
@settings(max_examples=100)
def test_vector_replay_matches_report(xs, data):
    ys = data.draw(st.lists(st.integers(-100, 100), min_size=len(xs), max_size=len(xs)))
    m = ScenarioMeasure.unit_vectors(len(xs))
    report = check_subadditivity(m, [(tuple(xs), tuple(ys))])
    lhs, rhs = evaluate_axiom(m, Axiom.SUBADDITIVITY, (tuple(xs), tuple(ys)))
    assert report.passed and lhs <= rhs

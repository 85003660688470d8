from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from riskmeasures.distributions import LossDistribution, l1_distance, partial_expectation
from riskmeasures.errors import CapacityError, SpecError
from riskmeasures.family import (
    TailSpec,
    band_perturbation,
    discriminate,
    indistinguishable_family,
    min_pairwise_l1,
    triangular_tail,
    uniform_tail,
)
from riskmeasures.measures import measure_vector, tce

SPEC = TailSpec(0, 5, "0.95")
FIVE = TailSpec(0, 5, "0.95", [("0.99", 4)])
LEVELS = [F(95, 100), F(99, 100)]

# (uniform tail, triangular tail, apex, expected flags (var, tce, ml) equal)
PAIRS = {
    "wide triangle": ((0, 5), (0, 10), 0, (True, False, False)),
    "narrow uniform": ((F(2, 3), F(8, 3)), (0, 5), 0, (False, True, False)),
    "late triangle": ((0, 5), (3, 5), F(17, 5), (False, False, True)),
    "short uniform": ((0, F(10, 3)), (0, 5), 0, (True, True, False)),
    "rising triangle": ((0, 5), (0, 5), 5, (True, False, True)),
    "shifted uniform": ((F(-5, 3), 5), (0, 5), 0, (False, True, True)),
}


class TestUniformTail:
    @pytest.mark.parametrize("c,d", [(0, 5), (F(2, 3), F(8, 3)), (F(-5, 3), 5), (-7, 11)])
    def test_closed_form(self, c, d):
        mv = measure_vector(uniform_tail(TailSpec(c, d, "0.95")), ["0.95"])
        assert (mv.at("0.95").var, mv.at("0.95").tce, mv.max_loss) == (c, F(c + d) / 2, d)

    def test_body_atom(self):
        dist = uniform_tail(SPEC)
        assert dist.atoms == ((-1, F(95, 100)),)
        assert uniform_tail(TailSpec(0, 5, "0.95", body_offset=3)).atoms == ((-3, F(95, 100)),)

    def test_inner_start(self):
        mv = measure_vector(uniform_tail(FIVE), LEVELS)
        assert [(e.var, e.tce) for e in mv.entries] == [(0, F(5, 2)), (4, F(9, 2))]
        assert mv.max_loss == 5


class TestTriangularTail:
    @pytest.mark.parametrize(
        "c,d,apex,expected",
        [(0, 10, 0, F(10, 3)), (0, 5, 5, F(10, 3)), (3, 5, F(17, 5), F(19, 5)), (0, 5, 0, F(5, 3))],
    )
    def test_centroid(self, c, d, apex, expected):
        dist = triangular_tail(TailSpec(c, d, "0.95"), apex)
        assert tce(dist, "0.95") == expected == F(c + d + apex) / 3
        assert partial_expectation(dist, c, d)[0] == F(5, 100)

    @given(st.fractions(-20, 20), st.fractions(F(1, 10), 20), st.fractions(0, 1), st.sampled_from(["0.9", "0.95", "0.99"]))
    @settings(max_examples=60)
    def test_centroid_property(self, c, width, t, level):
        d = c + width
        apex = c + t * width
        dist = triangular_tail(TailSpec(c, d, level), apex)
        assert tce(dist, level) == (c + d + apex) / 3
        assert measure_vector(dist, [level]).at(level).var == c

    def test_apex_outside(self):
        with pytest.raises(SpecError):
            triangular_tail(SPEC, 6)

    def test_inner_starts_rejected(self):
        with pytest.raises(SpecError):
            triangular_tail(FIVE, 2)


class TestSpecValidation:
    @pytest.mark.parametrize(
        "args",
        [
            (5, 0, "0.95"),
            (0, 0, "0.95"),
            (0, 5, 1),
            (0, 5, 0),
            (0, 5, "0.95", [("0.9", 2)]),
            (0, 5, "0.95", [("0.99", 6)]),
            (0, 5, "0.95", [("0.99", 4), ("0.999", 3)]),
        ],
    )
    def test_rejected(self, args):
        with pytest.raises(SpecError):
            TailSpec(*args)

    def test_body_offset_positive(self):
        with pytest.raises(SpecError):
            TailSpec(0, 5, "0.95", body_offset=0)

    def test_bands(self):
        assert FIVE.bands() == [(0, 4, F(4, 100)), (4, 5, F(1, 100))]


class TestPerturbation:
    @pytest.mark.parametrize("u,v,amp", [(0, 4, 1), (F(-3, 2), 7, -1), (4, 5, 1)])
    def test_zero_mass_and_moment(self, u, v, amp):
        # both properties are linear in the amplitude, so rescale to fit under a base density holding half the mass
        u, v = F(u), F(v)
        w = v - u
        base = 1 / (2 * w)
        knots = band_perturbation(u, v, base / 2 * (1 if amp > 0 else -1))
        segs = [(x0, x1, base + g0, base + g1) for (x0, g0), (x1, g1) in zip(knots, knots[1:])]
        bumped = LossDistribution([(u - 1, F(1, 2))], segs)
        plain = LossDistribution([(u - 1, F(1, 2))], [(u, v, base, base)])
        assert partial_expectation(bumped, u, v) == partial_expectation(plain, u, v) == (F(1, 2), (u + v) / 4)

    def test_even_about_midpoint(self):
        knots = band_perturbation(F(0), F(8), F(1))
        assert [g for _, g in knots] == [g for _, g in reversed(knots)]

    def test_preservation_follows_from_zero_moments(self):
        # a perturbation with zero mass but nonzero moment moves TCE; ours does not
        skewed = LossDistribution([(-1, F(95, 100))], [(0, F(5, 2), F(2, 100), F(2, 100)), (F(5, 2), 5, 0, 0)])
        assert partial_expectation(skewed, 0, 5)[0] == F(5, 100)
        assert tce(skewed, "0.95") != F(5, 2)
        member = indistinguishable_family(SPEC, 2)[1]
        assert tce(member, "0.95") == F(5, 2)


class TestFamily:
    def test_four_members(self):
        fam = indistinguishable_family(SPEC, 4)
        assert len(fam) == 4
        assert fam[0] == uniform_tail(SPEC)
        for d in fam:
            mv = measure_vector(d, ["0.95"])
            assert (mv.at("0.95").var, mv.at("0.95").tce, mv.max_loss) == (0, F(5, 2), 5)
        assert min_pairwise_l1(fam) >= F(1, 1000)

    def test_five_measures(self):
        fam = indistinguishable_family(FIVE, 3)
        vectors = {measure_vector(d, LEVELS) for d in fam}
        assert len(vectors) == 1
        assert min_pairwise_l1(fam) >= F(1, 1000)

    def test_single_member(self):
        assert indistinguishable_family(SPEC, 1) == [uniform_tail(SPEC)]

    def test_capacity(self):
        assert len(indistinguishable_family(FIVE, 21)) == 21
        with pytest.raises(CapacityError):
            indistinguishable_family(FIVE, 22)

    def test_size(self):
        with pytest.raises(SpecError):
            indistinguishable_family(SPEC, 0)

    def test_nonnegative_density(self):
        for d in indistinguishable_family(FIVE, 21):
            assert all(s.fa >= 0 and s.fb >= 0 for s in d.segments)

    @given(st.integers(2, 9), st.fractions(-10, 10), st.fractions(1, 10))
    @settings(max_examples=25, deadline=None)
    def test_both_clauses(self, n, c, width):
        spec = TailSpec(c, c + width, "0.95", [("0.99", c + width * F(4, 5))])
        fam = indistinguishable_family(spec, n)
        first = measure_vector(fam[0], LEVELS)
        for d in fam[1:]:
            assert measure_vector(d, LEVELS) == first
        for i, a in enumerate(fam):
            for b in fam[i + 1 :]:
                assert l1_distance(a, b) >= F(1, 1000)


class TestDiscriminate:
    @pytest.mark.parametrize("name", list(PAIRS))
    def test_pairs(self, name):
        (uc, ud), (tc, td), apex, flags = PAIRS[name]
        report = discriminate(uniform_tail(TailSpec(uc, ud, "0.95")), triangular_tail(TailSpec(tc, td, "0.95"), apex))
        got = (report.row("VaR 95%").equal, report.row("TCE 95%").equal, report.row("ML").equal)
        assert got == flags

    def test_wide_triangle_values(self):
        report = discriminate(uniform_tail(SPEC), triangular_tail(TailSpec(0, 10, "0.95"), 0))
        assert report.row("TCE 95%").first == F(5, 2)
        assert report.row("TCE 95%").second == F(10, 3)
        assert report.distinguishing() == ["TCE 95%", "ML"]

    def test_self(self):
        d = triangular_tail(SPEC, 2)
        assert discriminate(d, d, LEVELS).all_equal

    def test_family_indistinguishable(self):
        a, b = indistinguishable_family(FIVE, 2)
        assert discriminate(a, b, LEVELS).all_equal
        assert l1_distance(a, b) > 0

    def test_unknown_row(self):
        with pytest.raises(KeyError):
            discriminate(uniform_tail(SPEC), uniform_tail(SPEC)).row("ES")

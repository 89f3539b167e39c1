"""Expression evaluation: pointwise, along arcs, and the arc reports."""

import math
import random
from fractions import Fraction

import pytest

from arcan.corpus import arc_analytic_entries
from arcan.errors import ArcDomainError, DomainError, ZeroDenominator
from arcan.expr import ANALYTIC, POLE, REMOVABLE_MISMATCH, ArcSpec, arc_check, \
    eval_arc, eval_point, eval_point_flagged, regular_at
from arcan.parser import parse, parse_arc

from helpers import random_arc, random_polynomial_expr

F = Fraction

E1 = parse("guard(x^3 / (x^2 + y^2), 0)")
E4 = parse("guard(x * y / (x^2 + y^2), 0)")


class TestEvalPoint:
    def test_guard_default_at_denominator_zero(self):
        assert eval_point(E1, (0, 0)) == 0.0

    def test_direct_substitution(self):
        assert eval_point(E1, (1, 1)) == 0.5

    def test_constant_along_diagonal(self):
        for t in (0.25, -0.5, 1.0, 3.0):
            assert eval_point(E4, (t, t)) == pytest.approx(0.5)

    def test_exact_mode(self):
        assert eval_point(E1, (F(1), F(1)), exact=True) == F(1, 2)

    def test_unguarded_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            eval_point(parse("1 / (x^2 + y^2)"), (0, 0))

    def test_sqrt_negative(self):
        with pytest.raises(DomainError):
            eval_point(parse("sqrt(x)"), (-1.0,))

    def test_guard_flag(self):
        _, fired = eval_point_flagged(E1, (0, 0))
        assert fired
        _, fired = eval_point_flagged(E1, (1, 0))
        assert not fired

    def test_guard_does_not_catch_sqrt(self):
        with pytest.raises(DomainError):
            eval_point(parse("guard(sqrt(x) / y, 0)"), (-1.0, 1.0))


class TestRegularAt:
    def test_regular_away_from_zero_set(self):
        assert regular_at(E1, (0.125, 0.0))
        assert not regular_at(E1, (0.0, 0.0))

    def test_sqrt_boundary_is_not_regular(self):
        e2 = parse("sqrt(x^4 + y^4)")
        assert regular_at(e2, (0.5, 0.5))
        assert not regular_at(e2, (0.0, 0.0))


class TestEvalArc:
    def test_diagonal_germ_with_sampling_oracle(self):
        arc = parse_arc("t, t")
        jet = eval_arc(E1, arc, order=4)
        assert jet.valuation == 1
        assert jet.coeffs[0] == pytest.approx(0.5)
        assert all(abs(c) < 1e-14 for c in jet.coeffs[1:])
        # oracle: sample f along the arc and divide out the leading power
        for t in (1e-1, 1e-2, 1e-3, 1e-4):
            assert eval_point(E1, (t, t)) / t == pytest.approx(0.5, abs=1e-9)

    def test_pole_along_axis(self):
        e = parse("guard(1 / (x^2 + y^2), 0)")
        jet = eval_arc(e, parse_arc("t, 0"), order=4)
        assert jet.valuation == -2
        assert jet.coeffs[0] == pytest.approx(1.0)

    def test_polynomial_arc_exact(self):
        e = parse("x^2 + y^2")
        jet = eval_arc(e, parse_arc("t, 2*t"), order=4, exact=True)
        assert jet.valuation == 2
        assert jet.coeffs[0] == 5

    def test_arc_inside_zero_set_raises(self):
        with pytest.raises(ArcDomainError):
            eval_arc(E1, parse_arc("0, 0"), order=4)

    def test_sqrt_leaving_domain(self):
        with pytest.raises(ArcDomainError):
            eval_arc(parse("sqrt(x)", nvars=1), parse_arc("0 - t^2"), order=6)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            eval_arc(E1, parse_arc("t"), order=4)


class TestArcSpec:
    def test_components_must_be_polynomial(self):
        with pytest.raises(ValueError):
            ArcSpec((parse("sqrt(t)", varmap={"t": 0}),))
        with pytest.raises(ValueError):
            ArcSpec((parse("1/t", varmap={"t": 0}),))

    def test_division_by_constant_is_polynomial(self):
        arc = parse_arc("t/2, t")
        assert arc.basepoint() == (0.0, 0.0)

    def test_from_coeffs_matches_parse(self):
        built = ArcSpec.from_coeffs([[F(1), F(2)], [F(0), F(0), F(3)]])
        parsed = parse_arc("1 + 2*t, 3*t^2")
        for order in (3, 6):
            assert built.jets(order, exact=True) == parsed.jets(order, exact=True)

    def test_basepoint(self):
        arc = parse_arc("1 + t, 2 - t^2")
        assert arc.basepoint() == (1.0, 2.0)


class TestArcCheck:
    def test_removable_mismatch(self):
        report = arc_check(E4, parse_arc("t, t"), order=6)
        assert report.kind == REMOVABLE_MISMATCH
        assert report.mismatch == pytest.approx(0.5, abs=1e-15)

    def test_analytic(self):
        report = arc_check(E1, parse_arc("t, t"), order=6)
        assert report.kind == ANALYTIC

    def test_pole(self):
        report = arc_check(parse("guard(1/(x^2+y^2), 0)"), parse_arc("t, 0"),
                           order=6)
        assert report.kind == POLE

    def test_unguarded_undefined_point_is_a_mismatch(self):
        report = arc_check(parse("x^3 / (x^2 + y^2)"), parse_arc("t, t"), order=6)
        assert report.kind == REMOVABLE_MISMATCH
        assert report.mismatch == math.inf


class TestSeriesPointConsistency:
    def test_truncated_series_matches_pointwise_values(self):
        rng = random.Random(4242)
        for _ in range(60):
            nvars = rng.randint(1, 3)
            e = random_polynomial_expr(rng, nvars)
            arc = random_arc(rng, nvars, degree=4)
            order = 40  # above any composed degree: the jet is the polynomial
            jet = eval_arc(e, arc, order)
            for t0 in (1e-2, -1e-2, 1e-3, -1e-3):
                direct = eval_point(e, tuple(
                    eval_point(c, (t0,)) for c in arc.components))
                series = jet.eval_poly(t0)
                assert abs(series - direct) <= 1e-9 * (1 + abs(direct))


class TestCorpusArcsStayAnalytic:
    def test_no_pole_or_mismatch_on_arc_analytic_entries(self):
        rng = random.Random(777)
        for entry in arc_analytic_entries():
            e = entry.expr()
            locus_pts = list(entry.exact_locus_points)
            for i in range(200):
                if i % 4 == 0 and locus_pts:
                    through = locus_pts[i % len(locus_pts)]
                else:
                    through = tuple(F(rng.randint(-8, 8), 8)
                                    for _ in range(entry.nvars))
                arc = random_arc(rng, entry.nvars, degree=4, through=through)
                report = arc_check(e, arc, order=12, tol=1e-8)
                assert report.kind == ANALYTIC, (
                    f"{entry.name}: {report.kind} along arc through {through}")

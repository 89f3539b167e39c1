"""Corpus registry: structure, tags, and locus membership tests."""

from fractions import Fraction

import pytest

from arcan.corpus import ARC_ANALYTIC, ARC_MEROMORPHIC_ONLY, DISCONTINUOUS, \
    NOT_C2, NOT_DIFFERENTIABLE, NOT_LIPSCHITZ, OvalLocus, arc_analytic_entries, \
    corpus_list, lookup
from arcan.expr import eval_point

F = Fraction


class TestRegistry:
    def test_expected_entries_present(self):
        names = [e.name for e in corpus_list()]
        assert names == ["E1", "E2", "E3", "E4", "E5", "E6"]

    def test_every_entry_parses_and_evaluates(self):
        for entry in corpus_list():
            e = entry.expr()
            assert e.nvars == entry.nvars
            value = eval_point(e, (0.3,) * entry.nvars)
            assert isinstance(value, float)

    def test_lookup(self):
        assert lookup("E2").tags == frozenset({ARC_ANALYTIC, NOT_C2})
        with pytest.raises(KeyError):
            lookup("E9")

    def test_tags(self):
        assert NOT_DIFFERENTIABLE in lookup("E1").tags
        assert NOT_LIPSCHITZ in lookup("E3").tags
        assert lookup("E4").tags == frozenset({ARC_MEROMORPHIC_ONLY, DISCONTINUOUS})
        assert len(arc_analytic_entries()) == 5

    def test_json(self):
        doc = lookup("E1").to_json()
        assert doc["expr"].startswith("guard")
        assert doc["resolutionCharts"] == [{"n": 2, "center": [1, 2], "axis": 1}]


class TestLoci:
    def test_point_locus(self):
        locus = lookup("E1").locus
        assert locus.contains((0.0, 0.0))
        assert not locus.contains((0.125, 0.0))

    def test_subspace_locus(self):
        locus = lookup("E5").locus
        assert locus.contains((0.0, 0.0, 0.75))
        assert not locus.contains((0.125, 0.0, 0.75))
        assert "z" not in locus.describe().replace("x = y = 0", "")

    def test_oval_membership_exact(self):
        locus = lookup("E6").locus
        assert locus.contains((F(0), F(0), F(0)))
        assert locus.contains((F(1), F(0), F(0)))
        # on the quartic curve but on the right-hand component
        assert not locus.contains((F(2), F(0), F(0)))
        assert not locus.contains((F(3), F(0), F(0)))
        # off the z = 0 plane
        assert not locus.contains((F(0), F(0), F(1, 2)))

    def test_oval_has_no_point_on_the_separating_line(self):
        # x = 3/2 gives y^2 + 9/16 = 0: empty over the reals
        locus = OvalLocus()
        for y in (F(0), F(1, 2), F(-3, 4), F(17, 8)):
            assert not locus.contains((F(3, 2), y, F(0)))

    def test_locus_points_really_sit_on_the_locus(self):
        for entry in corpus_list():
            for pt in entry.exact_locus_points:
                assert entry.locus.contains(pt), (entry.name, pt)
            for pt in entry.regular_points:
                assert not entry.locus.contains(pt), (entry.name, pt)

    def test_e6_denominator_vanishes_exactly_on_locus_points(self):
        e = lookup("E6").expr()
        # g1(0,0) = sqrt(9/4) - 3/2 = 0 exactly, so the guard fires
        assert eval_point(e, (0.0, 0.0, 0.0)) == 0.0
        assert eval_point(e, (1.0, 0.0, 0.0)) == 0.0
        # on the companion component the denominator stays positive
        assert eval_point(e, (2.0, 0.0, 0.5)) != 0.0

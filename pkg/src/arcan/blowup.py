"""Affine charts of coordinate-subspace blow-ups and expression pullbacks.

Blowing up the subspace T = {x_i = 0 : i in center} replaces T by the
directions normal to it.  In the affine chart indexed by a chosen axis
j in center, the substitution is

    x_j = s,    x_i = s * y_i  (i in center, i != j),    x_i unchanged,

with the exceptional divisor at {s = 0}.  Pulling an expression back means
substituting, then cancelling the common power of s from each rational
subtree so the behaviour on the divisor becomes visible to the classifier.

`fiber_lift_check` samples the contrapositive diagnostic: when a point of
the center is non-analytic for f but regular points of the center
accumulate at it, the non-analyticity must lift to the whole fiber above it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .classify import ANALYTIC_UP_TO, DEFAULT_TOL, NON_ANALYTIC, Verdict, \
    classify_point
from .errors import BadCenter, PremiseViolated
from .expr import Add, Div, Expr, Guard, IntPow, Mul, Node, Sqrt, Sub, Var, \
    substitute
from .jets import Scalar
from . import mpoly
from .seeds import derive_seed


@dataclass(frozen=True)
class BlowupChart:
    """One affine chart of the blow-up of a coordinate subspace.

    Indices are 0-based variable positions; `center` lists the coordinates
    that vanish on the blown-up subspace and `axis` is the one playing the
    role of s in this chart.  Chart coordinates live at the same positions
    as the originals: position `axis` holds s, the other center positions
    hold the normal slopes y_i.
    """

    nvars: int
    center: tuple[int, ...]
    axis: int

    def __post_init__(self):
        center = tuple(sorted(set(self.center)))
        object.__setattr__(self, "center", center)
        if any(i < 0 or i >= self.nvars for i in center):
            raise ValueError("center indices out of range")
        if len(center) < 2:
            raise BadCenter("blow-up center must have codimension >= 2")
        if self.axis not in center:
            raise ValueError("chart axis must belong to the center")

    @property
    def jacobian_power(self) -> int:
        """The chart map's Jacobian determinant is s to this power."""
        return len(self.center) - 1

    def substitution_map(self) -> dict[int, Node]:
        return {i: Mul(Var(self.axis), Var(i))
                for i in self.center if i != self.axis}

    def apply(self, chart_point: Sequence[Scalar]) -> tuple:
        """Map chart coordinates to the original coordinates."""
        s = chart_point[self.axis]
        out = list(chart_point)
        for i in self.center:
            if i != self.axis:
                out[i] = s * chart_point[i]
        return tuple(out)

    def invert(self, base_point: Sequence[Scalar]) -> tuple:
        """Chart coordinates over a base point with nonzero axis coordinate."""
        s = base_point[self.axis]
        if s == 0:
            raise ValueError("point lies over the center; chart inverse undefined")
        out = list(base_point)
        for i in self.center:
            if i != self.axis:
                out[i] = base_point[i] / s
        return tuple(out)

    def to_json(self) -> dict:
        return {"n": self.nvars, "center": [i + 1 for i in self.center],
                "axis": self.axis + 1}

    @staticmethod
    def from_json(doc: dict) -> "BlowupChart":
        return BlowupChart(doc["n"], tuple(i - 1 for i in doc["center"]),
                           doc["axis"] - 1)


def make_chart(nvars: int, center: Sequence[int], axis: int) -> BlowupChart:
    """Build a chart from 1-based variable numbers (as in the JSON form)."""
    return BlowupChart(nvars, tuple(i - 1 for i in center), axis - 1)


@dataclass(frozen=True)
class PullbackResult:
    """An expression rewritten in chart coordinates."""

    expr: Expr
    cancelled_power: int
    non_rational: bool
    chart: BlowupChart

    @property
    def exceptional_divisor(self) -> int:
        """0-based coordinate whose vanishing cuts out the divisor {s = 0}."""
        return self.chart.axis

    def to_json(self) -> dict:
        from .parser import to_text, var_name
        s = var_name(self.chart.axis, self.chart.nvars)
        return {"expr": to_text(self.expr), "cancelledPower": self.cancelled_power,
                "nonRationalCancellation": self.non_rational,
                "exceptionalDivisor": f"{{{s} = 0}}",
                "chart": self.chart.to_json()}


def _cancel_divisor_power(node: Node, s_index: int, nvars: int):
    """Expand rational division subtrees and strip their common s-power."""
    if isinstance(node, Div):
        pair = mpoly.to_fraction_pair(node, nvars)
        if pair is not None:
            num, den = pair
            vn = mpoly.min_exponent(num, s_index)
            vd = mpoly.min_exponent(den, s_index)
            if vd is None:
                raise ZeroDivisionError("identically zero denominator")
            c = vd if vn is None else min(vn, vd)
            num = mpoly.shift_down(num, s_index, c)
            den = mpoly.shift_down(den, s_index, c)
            return Div(mpoly.to_node(num, nvars), mpoly.to_node(den, nvars)), c, False
        left, cl, _ = _cancel_divisor_power(node.left, s_index, nvars)
        right, cr, _ = _cancel_divisor_power(node.right, s_index, nvars)
        return Div(left, right), cl + cr, True
    if isinstance(node, (Add, Sub, Mul)):
        left, cl, fl = _cancel_divisor_power(node.left, s_index, nvars)
        right, cr, fr = _cancel_divisor_power(node.right, s_index, nvars)
        return type(node)(left, right), cl + cr, fl or fr
    if isinstance(node, IntPow):
        base, c, f = _cancel_divisor_power(node.base, s_index, nvars)
        return IntPow(base, node.exponent), c, f
    if isinstance(node, Sqrt):
        arg, c, f = _cancel_divisor_power(node.arg, s_index, nvars)
        return Sqrt(arg), c, f
    if isinstance(node, Guard):
        body, c, f = _cancel_divisor_power(node.body, s_index, nvars)
        return Guard(body, node.default), c, f
    return node, 0, False


def pullback(e: Expr, chart: BlowupChart) -> PullbackResult:
    """Substitute chart coordinates into the expression and simplify.

    Every rational division subtree is expanded to a single fraction and
    the highest power of s dividing both numerator and denominator is
    removed; guard defaults are carried through unchanged.  Square roots
    block the expansion of the subtree containing them, which is flagged
    (not an error) and leaves that division unsimplified.
    """
    if e.nvars != chart.nvars:
        raise ValueError("chart and expression dimensions differ")
    substituted = substitute(e.root, chart.substitution_map())
    simplified, cancelled, non_rational = _cancel_divisor_power(
        substituted, chart.axis, e.nvars)
    return PullbackResult(Expr(simplified, e.nvars), cancelled, non_rational, chart)


def pullback_sequence(e: Expr, charts: Sequence[BlowupChart]) -> PullbackResult:
    """Fold `pullback` over successive charts, each in its own frame.

    No global atlas is kept: the k-th chart acts on the coordinates produced
    by the (k-1)-th.  Cancelled powers accumulate and the non-rational flag
    sticks once set; the reported chart is the last one applied.
    """
    if not charts:
        raise ValueError("need at least one chart")
    cancelled = 0
    non_rational = False
    result = None
    for chart in charts:
        result = pullback(e, chart)
        e = result.expr
        cancelled += result.cancelled_power
        non_rational = non_rational or result.non_rational
    return PullbackResult(e, cancelled, non_rational, charts[-1])


def classify_pullback(e: Expr, chart: BlowupChart,
                      points_on_divisor: Sequence[Sequence[Scalar]],
                      k_max: int = 6, tol: float = DEFAULT_TOL, seed: int = 0,
                      exact: bool = False, order: int | None = None,
                      shortcut: bool = False) -> list[Verdict]:
    """Classify the pulled-back expression at points of {s = 0}."""
    pb = pullback(e, chart)
    verdicts = []
    for i, pt in enumerate(points_on_divisor):
        if pt[chart.axis] != 0:
            raise ValueError(
                f"point {tuple(pt)} is not on the exceptional divisor")
        verdicts.append(classify_point(
            pb.expr, pt, k_max, tol, derive_seed(seed, "divisor", i),
            order, exact, shortcut))
    return verdicts


@dataclass(frozen=True)
class FiberLiftReport:
    """Sampled verdicts along the fiber over a non-analytic center point."""

    consistent: bool
    base_verdict: Verdict
    fiber_verdicts: tuple[Verdict, ...]
    regular_center_samples: int
    analytic_fiber_points: int
    inconclusive_fiber_points: int


def fiber_lift_check(e: Expr, chart: BlowupChart, base_point: Sequence[Scalar],
                     k_max: int = 6, tol: float = DEFAULT_TOL, seed: int = 0,
                     n_fiber: int = 16, n_center: int = 8,
                     center_delta: float = 0.25, fiber_box: float = 2.0,
                     exact: bool = False,
                     order: int | None = None) -> FiberLiftReport:
    """Test that non-analyticity at a center point lifts to its whole fiber.

    Premises checked on samples: the base point itself classifies
    NonAnalytic, and regular points of the center accumulate at it (some
    nearby center sample classifies analytic).  Under those premises every
    sampled fiber point must classify NonAnalytic; an analytic fiber point
    would certify the base point analytic, a contradiction.
    """
    base_point = tuple(base_point)
    if len(base_point) != e.nvars:
        raise ValueError("base point dimension mismatch")
    if any(base_point[i] != 0 for i in chart.center):
        raise ValueError("base point must lie on the blow-up center")

    base_verdict = classify_point(e, base_point, k_max, tol,
                                  derive_seed(seed, "base"), order, exact)
    if base_verdict.status != NON_ANALYTIC:
        raise PremiseViolated(
            f"base point classifies {base_verdict.status}, not NonAnalytic")

    free_center = [i for i in range(e.nvars) if i not in chart.center]
    rng = random.Random(derive_seed(seed, "center-samples"))
    regular = 0
    for j in range(n_center):
        pt = list(base_point)
        for i in free_center:
            pt[i] += center_delta * (rng.random() * 1.5 + 0.5) * rng.choice((-1, 1))
        v = classify_point(e, tuple(pt), k_max, tol,
                           derive_seed(seed, "center", j), order, exact,
                           shortcut=True)
        if v.status == ANALYTIC_UP_TO:
            regular += 1
    if regular == 0:
        raise PremiseViolated(
            "no nearby regular point of the center was found; the base point "
            "is not in the closure of the regular part of the center")

    rng = random.Random(derive_seed(seed, "fiber-samples"))
    fiber_points = []
    for _ in range(n_fiber):
        pt = list(base_point)
        pt[chart.axis] = 0
        for i in chart.center:
            if i != chart.axis:
                pt[i] = fiber_box * (2 * rng.random() - 1)
        fiber_points.append(tuple(pt))
    verdicts = tuple(classify_pullback(e, chart, fiber_points, k_max, tol,
                                       derive_seed(seed, "fiber"), exact, order))
    analytic = sum(1 for v in verdicts if v.status == ANALYTIC_UP_TO)
    inconclusive = sum(1 for v in verdicts
                       if v.status not in (ANALYTIC_UP_TO, NON_ANALYTIC))
    return FiberLiftReport(analytic == 0, base_verdict, verdicts, regular,
                           analytic, inconclusive)

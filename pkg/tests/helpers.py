"""Shared random generators for the property tests (seeded, no hypothesis)."""

from __future__ import annotations

import random
from fractions import Fraction

from arcan.expr import Add, ArcSpec, Div, Expr, Guard, IntPow, Mul, \
    RationalConst, Sqrt, Sub, Var
from arcan.jets import LaurentJet


def rand_fraction(rng: random.Random, span: int = 6, den: int = 4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_nonzero_fraction(rng: random.Random, span: int = 6) -> Fraction:
    while True:
        f = rand_fraction(rng, span)
        if f != 0:
            return f


def random_laurent(rng: random.Random, order: int, exact: bool = True,
                   min_val: int = -3, allow_zero: bool = False) -> LaurentJet:
    val = rng.randint(min_val, max(min_val, order - 2))
    length = order - val + 1
    coeffs = [rand_fraction(rng) for _ in range(length)]
    if not allow_zero:
        coeffs[0] = rand_nonzero_fraction(rng)
    if not exact:
        coeffs = [float(c) for c in coeffs]
    return LaurentJet(val, coeffs, order)


def random_poly_jet(rng: random.Random, order: int, degree: int,
                    exact: bool = True) -> LaurentJet:
    coeffs = [rand_fraction(rng) for _ in range(degree + 1)]
    coeffs += [Fraction(0)] * (order - degree)
    if not exact:
        coeffs = [float(c) for c in coeffs]
    return LaurentJet(0, coeffs, order)


def jets_agree(a: LaurentJet, b: LaurentJet, tol: float = 0.0,
               scale: float | None = None) -> bool:
    """Coefficientwise agreement on the intersection of trusted windows.

    With tol > 0 the comparison is relative, either to each coefficient pair
    or, when `scale` is given, to that uniform magnitude (use the size of the
    intermediate computation for roundtrips that amplify coefficients).
    """
    hi = min(a.order, b.order)
    lo = min(a.valuation, b.valuation)
    for i in range(lo, hi + 1):
        ca, cb = a.coeff(i), b.coeff(i)
        if tol == 0.0:
            if ca != cb:
                return False
        else:
            s = scale if scale is not None \
                else max(1.0, abs(float(ca)), abs(float(cb)))
            if abs(float(ca) - float(cb)) > tol * s:
                return False
    return True


def coeff_norm(a: LaurentJet) -> float:
    return max((abs(float(c)) for c in a.coeffs), default=0.0)


# --- random expression trees ----------------------------------------------------

def random_tree(rng: random.Random, nvars: int, depth: int):
    """Arbitrary well-formed node, used for parser/printer roundtrips."""
    if depth <= 0 or rng.random() < 0.25:
        if rng.random() < 0.5:
            return Var(rng.randrange(nvars))
        return RationalConst(rand_fraction(rng, span=9))
    kind = rng.choice(("add", "sub", "mul", "div", "pow", "sqrt", "guard"))
    if kind in ("add", "sub", "mul", "div"):
        left = random_tree(rng, nvars, depth - 1)
        right = random_tree(rng, nvars, depth - 1)
        if kind == "div" and isinstance(left, RationalConst) \
                and isinstance(right, RationalConst):
            # the parser folds literal quotients, so never generate them
            right = Add(right, Var(rng.randrange(nvars)))
        return {"add": Add, "sub": Sub, "mul": Mul, "div": Div}[kind](left, right)
    if kind == "pow":
        return IntPow(random_tree(rng, nvars, depth - 1), rng.randint(0, 6))
    if kind == "sqrt":
        return Sqrt(random_tree(rng, nvars, depth - 1))
    return Guard(random_tree(rng, nvars, depth - 1), rand_fraction(rng, span=9))


def random_polynomial_expr(rng: random.Random, nvars: int, depth: int = 3) -> Expr:
    """A random polynomial expression (no division, sqrt, or guard)."""
    def node(d):
        if d <= 0 or rng.random() < 0.3:
            if rng.random() < 0.6:
                return Var(rng.randrange(nvars))
            return RationalConst(rand_fraction(rng))
        kind = rng.choice(("add", "sub", "mul", "pow"))
        if kind == "pow":
            return IntPow(node(d - 1), rng.randint(0, 3))
        cls = {"add": Add, "sub": Sub, "mul": Mul}[kind]
        return cls(node(d - 1), node(d - 1))
    return Expr(node(depth), nvars)


def random_safe_rational_expr(rng: random.Random, nvars: int) -> Expr:
    """Numerator / (square + positive constant): analytic everywhere."""
    num = random_polynomial_expr(rng, nvars, depth=3).root
    den_core = random_polynomial_expr(rng, nvars, depth=2).root
    den = Add(IntPow(den_core, 2), RationalConst(Fraction(rng.randint(1, 3))))
    return Expr(Div(num, den), nvars)


def random_arc(rng: random.Random, nvars: int, degree: int = 4,
               through=None) -> ArcSpec:
    """Random polynomial arc; `through` pins the basepoint gamma(0)."""
    rows = []
    for i in range(nvars):
        c0 = Fraction(through[i]) if through is not None else rand_fraction(rng)
        row = [c0] + [rand_fraction(rng, span=4) for _ in range(degree)]
        if all(c == 0 for c in row[1:]):
            row[1] = rand_nonzero_fraction(rng, span=4)
        rows.append(row)
    return ArcSpec.from_coeffs(rows)


def random_point(rng: random.Random, nvars: int, box: float = 1.0) -> tuple:
    return tuple(rng.uniform(-box, box) for _ in range(nvars))

"""Sparse multivariate polynomials over the rationals.

Just enough algebra to flatten a rational expression subtree into a single
numerator/denominator pair and strip monomial content in one chosen
variable; exponent tuples key a dict of Fraction coefficients.
"""

from __future__ import annotations

from fractions import Fraction

from .expr import Add, Div, Guard, IntPow, Mul, Node, RationalConst, Sqrt, Sub, Var

Poly = dict[tuple[int, ...], Fraction]


def p_const(c: Fraction, nvars: int) -> Poly:
    c = Fraction(c)
    return {} if c == 0 else {(0,) * nvars: c}


def p_var(i: int, nvars: int) -> Poly:
    e = tuple(1 if j == i else 0 for j in range(nvars))
    return {e: Fraction(1)}


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def p_neg(a: Poly) -> Poly:
    return {e: -c for e, c in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            s = out.get(e, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def p_pow(a: Poly, k: int, nvars: int) -> Poly:
    if k < 0:
        raise ValueError("negative power")
    result = p_const(Fraction(1), nvars)
    base = a
    while k:
        if k & 1:
            result = p_mul(result, base)
        k >>= 1
        if k:
            base = p_mul(base, base)
    return result


def to_fraction_pair(node: Node, nvars: int) -> tuple[Poly, Poly] | None:
    """Flatten a rational subtree to (numerator, denominator); None if it
    contains sqrt or guard nodes."""
    if isinstance(node, RationalConst):
        return p_const(node.value, nvars), p_const(Fraction(1), nvars)
    if isinstance(node, Var):
        return p_var(node.index, nvars), p_const(Fraction(1), nvars)
    if isinstance(node, (Add, Sub)):
        lhs = to_fraction_pair(node.left, nvars)
        rhs = to_fraction_pair(node.right, nvars)
        if lhs is None or rhs is None:
            return None
        n1, d1 = lhs
        n2, d2 = rhs
        if isinstance(node, Sub):
            n2 = p_neg(n2)
        return p_add(p_mul(n1, d2), p_mul(n2, d1)), p_mul(d1, d2)
    if isinstance(node, Mul):
        lhs = to_fraction_pair(node.left, nvars)
        rhs = to_fraction_pair(node.right, nvars)
        if lhs is None or rhs is None:
            return None
        return p_mul(lhs[0], rhs[0]), p_mul(lhs[1], rhs[1])
    if isinstance(node, Div):
        lhs = to_fraction_pair(node.left, nvars)
        rhs = to_fraction_pair(node.right, nvars)
        if lhs is None or rhs is None:
            return None
        if not rhs[0]:
            raise ZeroDivisionError("division by an identically zero denominator")
        return p_mul(lhs[0], rhs[1]), p_mul(lhs[1], rhs[0])
    if isinstance(node, IntPow):
        base = to_fraction_pair(node.base, nvars)
        if base is None:
            return None
        return p_pow(base[0], node.exponent, nvars), \
            p_pow(base[1], node.exponent, nvars)
    if isinstance(node, (Sqrt, Guard)):
        return None
    raise TypeError(f"not an expression node: {node!r}")


def min_exponent(p: Poly, var: int) -> int | None:
    """Smallest exponent of the chosen variable across monomials; None if p = 0."""
    if not p:
        return None
    return min(e[var] for e in p)


def shift_down(p: Poly, var: int, power: int) -> Poly:
    if power == 0:
        return p
    out: Poly = {}
    for e, c in p.items():
        le = list(e)
        le[var] -= power
        out[tuple(le)] = c
    return out


def to_node(p: Poly, nvars: int) -> Node:
    """Rebuild an expression node, terms in descending graded-lex order."""
    if not p:
        return RationalConst(Fraction(0))
    keys = sorted(p, key=lambda e: (sum(e), e), reverse=True)
    terms = []
    for e in keys:
        c = p[e]
        factors: list[Node] = []
        for i, ei in enumerate(e):
            if ei == 1:
                factors.append(Var(i))
            elif ei >= 2:
                factors.append(IntPow(Var(i), ei))
        if not factors or c != 1:
            factors.insert(0, RationalConst(c))
        term = factors[0]
        for f in factors[1:]:
            term = Mul(term, f)
        terms.append(term)
    node = terms[0]
    for t in terms[1:]:
        node = Add(node, t)
    return node

"""Recursive-descent parser and canonical printer for the expression grammar.

Grammar (UTF-8 text):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' INT)?
    atom    := NUMBER | VARIABLE | 'sqrt' '(' expr ')'
             | 'guard' '(' expr ',' signed_rational ')' | '(' expr ')'

Variables are `x`, `y`, `z` (aliases of `x1`, `x2`, `x3`) or `x1..xN`.
Numbers are integer, `p/q`, or decimal literals; a quotient of two integer
literals folds to a single rational constant, so the printer's `p/q` output
reparses to the same node.  The printer emits a fully parenthesized form.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ArityError, ExprSyntaxError
from .expr import Add, Div, Expr, Guard, IntPow, Mul, Node, RationalConst, Sqrt, \
    Sub, Var

_NAMED_VARS = {"x": 0, "y": 1, "z": 2}


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos

    def __repr__(self):
        return f"_Token({self.kind}, {self.text!r})"


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^(),":
            tokens.append(_Token(c, c, i))
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            tokens.append(_Token("number", text[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], varmap: dict[str, int] | None):
        self.tokens = tokens
        self.pos = 0
        self.varmap = varmap

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise ExprSyntaxError(f"expected {kind!r}, found {tok.text!r}", tok.pos)
        return tok

    def parse_expr(self) -> Node:
        node = self.parse_term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self) -> Node:
        node = self.parse_unary()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            rhs = self.parse_unary()
            if op == "*":
                node = Mul(node, rhs)
            elif isinstance(node, RationalConst) and isinstance(rhs, RationalConst) \
                    and rhs.value != 0:
                node = RationalConst(node.value / rhs.value)
            else:
                node = Div(node, rhs)
        return node

    def parse_unary(self) -> Node:
        if self.peek().kind == "-":
            tok = self.next()
            operand = self.parse_unary()
            if isinstance(operand, RationalConst):
                return RationalConst(-operand.value)
            return Sub(RationalConst(Fraction(0)), operand)
        return self.parse_power()

    def parse_power(self) -> Node:
        base = self.parse_atom()
        if self.peek().kind != "^":
            return base
        caret = self.next()
        tok = self.peek()
        if tok.kind != "number" or "." in tok.text:
            raise ExprSyntaxError("exponent must be a non-negative integer", caret.pos)
        self.next()
        return IntPow(base, int(tok.text))

    def parse_atom(self) -> Node:
        tok = self.next()
        if tok.kind == "number":
            return RationalConst(Fraction(tok.text))
        if tok.kind == "(":
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.kind == "ident":
            if tok.text == "sqrt":
                self.expect("(")
                arg = self.parse_expr()
                self.expect(")")
                return Sqrt(arg)
            if tok.text == "guard":
                self.expect("(")
                body = self.parse_expr()
                self.expect(",")
                default = self.parse_expr()
                self.expect(")")
                if not isinstance(default, RationalConst):
                    raise ArityError("guard default must be a rational constant")
                return Guard(body, default.value)
            return Var(self._var_index(tok))
        raise ExprSyntaxError(f"unexpected token {tok.text or 'end of input'!r}",
                              tok.pos)

    def _var_index(self, tok: _Token) -> int:
        name = tok.text
        if self.varmap is not None:
            if name not in self.varmap:
                raise ExprSyntaxError(f"unknown variable {name!r}", tok.pos)
            return self.varmap[name]
        if name in _NAMED_VARS:
            return _NAMED_VARS[name]
        if name.startswith("x") and name[1:].isdigit() and int(name[1:]) >= 1:
            return int(name[1:]) - 1
        raise ExprSyntaxError(f"unknown variable {name!r}", tok.pos)


def parse(text: str, nvars: int | None = None,
          varmap: dict[str, int] | None = None) -> Expr:
    """Parse expression text; `nvars` widens the inferred dimension."""
    parser = _Parser(_tokenize(text), varmap)
    root = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.pos)
    from .expr import max_var_index
    inferred = max_var_index(root) + 1
    if nvars is None:
        nvars = max(inferred, 1)
    elif nvars < inferred:
        raise ArityError(f"expression needs {inferred} variables, nvars={nvars}")
    return Expr(root, nvars)


def parse_arc(text: str):
    """Parse comma-separated univariate polynomial components in t."""
    from .expr import ArcSpec
    parts = _split_top_level(text)
    comps = tuple(parse(p, nvars=1, varmap={"t": 0}) for p in parts)
    return ArcSpec(comps)


def _split_top_level(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, c in enumerate(text):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    if any(not p.strip() for p in parts):
        raise ExprSyntaxError("empty arc component", 0)
    return parts


def var_name(index: int, nvars: int) -> str:
    if nvars <= 3:
        return "xyz"[index]
    return f"x{index + 1}"


def to_text(e: Expr) -> str:
    """Fully parenthesized canonical form; reparses to the same tree."""
    return _print(e.root, e.nvars)


def _print(node: Node, nvars: int) -> str:
    if isinstance(node, RationalConst):
        # fractions and negatives get their own parentheses so that an
        # enclosing power or product reparses to the same node
        text = str(node.value)
        if node.value < 0 or node.value.denominator != 1:
            return f"({text})"
        return text
    if isinstance(node, Var):
        return var_name(node.index, nvars)
    if isinstance(node, Add):
        return f"({_print(node.left, nvars)} + {_print(node.right, nvars)})"
    if isinstance(node, Sub):
        return f"({_print(node.left, nvars)} - {_print(node.right, nvars)})"
    if isinstance(node, Mul):
        return f"({_print(node.left, nvars)} * {_print(node.right, nvars)})"
    if isinstance(node, Div):
        return f"({_print(node.left, nvars)} / {_print(node.right, nvars)})"
    if isinstance(node, IntPow):
        return f"({_print(node.base, nvars)} ^ {node.exponent})"
    if isinstance(node, Sqrt):
        return f"sqrt({_print(node.arg, nvars)})"
    if isinstance(node, Guard):
        return f"guard({_print(node.body, nvars)}, {node.default})"
    raise TypeError(f"not an expression node: {node!r}")

"""Expression parser for rational functions and bivariate polynomials.

Grammar: integer literals, the variables t, X, Y, the operators + - * / ^
with parentheses; ^ binds tightest and takes a nonnegative integer
exponent, * and / are left associative, unary minus is allowed at the
start of a factor.  Whitespace is ignored.  Values are tracked as exact
quotients of bivariate polynomials, so `(t^2-1)/(t-1)` normalizes to t+1
and `(X*Y)/X` to Y.
"""

from __future__ import annotations

from fractions import Fraction

from .bipoly import BiPoly, UniPoly
from .field_core import Place, Poly, RatFunc, render_poly


class ParseError(ValueError):
    """Syntax error, carrying the offset it was detected at."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class DivisionByZeroPoly(ZeroDivisionError):
    """Division by an expression that is identically zero."""


_OPS = set("+-*/^()")


def _tokenize(src: str):
    tokens = []
    i = 0
    n = len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j]), i))
            i = j
            continue
        if ch in ("t", "X", "Y"):
            tokens.append(("var", ch, i))
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    """Precedence-climbing parser over (numerator, denominator) pairs."""

    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.k = 0

    def peek(self):
        return self.tokens[self.k]

    def next(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            n1, d1 = value
            n2, d2 = rhs
            num = n1 * d2 + n2 * d1 if op == "+" else n1 * d2 - n2 * d1
            value = (num, d1 * d2)
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.next()
            rhs = self.unary()
            n1, d1 = value
            n2, d2 = rhs
            if op == "*":
                value = (n1 * n2, d1 * d2)
            else:
                if n2.is_zero:
                    raise DivisionByZeroPoly(
                        f"division by zero expression (at position {pos})")
                value = (n1 * d2, d1 * n2)
        return value

    def unary(self):
        kind, _, _ = self.peek()
        if kind in ("+", "-"):
            op = self.next()[0]
            value = self.unary()
            return (-value[0], value[1]) if op == "-" else value
        return self.power()

    def power(self):
        base = self.atom()
        while self.peek()[0] == "^":
            self.next()
            tok = self.next()
            if tok[0] != "int":
                raise ParseError("the exponent must be a nonnegative integer",
                                 tok[2])
            n = tok[1]
            num, den = base
            if num.is_zero and n == 0:
                raise ParseError("0^0 is undefined", tok[2])
            base = (num ** n, den ** n)
        return base

    def atom(self):
        tok = self.next()
        kind, value, pos = tok
        if kind == "int":
            return (BiPoly.const(value), BiPoly.const(1))
        if kind == "var":
            if value == "t":
                return (BiPoly.const(RatFunc.t()), BiPoly.const(1))
            if value == "X":
                return (BiPoly.x(), BiPoly.const(1))
            return (BiPoly.y(), BiPoly.const(1))
        if kind == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)


def _reduce_pair(num: BiPoly, den: BiPoly, src: str):
    """Normalize a (num, den) pair; the denominator must divide exactly."""
    if den.is_zero:
        raise DivisionByZeroPoly("division by zero expression")
    if den.is_constant:
        inv = RatFunc.one() / den.coeff(0, 0)
        return num.scale(inv), BiPoly.const(1)
    # denominator involves X or Y: try exact division
    main_x = den.deg_x >= den.deg_y
    a = num.as_unipoly_in_x() if main_x else num.as_unipoly_in_y()
    b = den.as_unipoly_in_x() if main_x else den.as_unipoly_in_y()
    quot, rem = _poly_list_divmod(a, b)
    if rem is None:
        raise ParseError(
            f"denominator does not divide the numerator in {src!r}", 0)
    from .bipoly import _from_main_x, _from_main_y

    out = _from_main_x(quot) if main_x else _from_main_y(quot)
    return out, BiPoly.const(1)


def _poly_list_divmod(a: list[UniPoly], b: list[UniPoly]):
    """Exact division of main-variable coefficient lists; None if inexact."""
    while a and a[-1].is_zero:
        a = a[:-1]
    while b and b[-1].is_zero:
        b = b[:-1]
    if not b:
        return None, None
    quot = [UniPoly.zero()] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    db = len(b) - 1
    while len(rem) - 1 >= db and any(not c.is_zero for c in rem):
        while rem and rem[-1].is_zero:
            rem.pop()
        if len(rem) - 1 < db:
            break
        q, r = divmod(rem[-1], b[-1])
        if not r.is_zero or q.is_zero:
            return None, None
        shift = len(rem) - 1 - db
        quot[shift] = quot[shift] + q
        for j, bj in enumerate(b):
            rem[shift + j] = rem[shift + j] - q * bj
        while rem and rem[-1].is_zero:
            rem.pop()
    if rem and any(not c.is_zero for c in rem):
        return None, None
    return quot, True


def parse_bipoly(src: str) -> BiPoly:
    """Parse an expression in t, X, Y into a bivariate polynomial."""
    num, den = _Parser(src).parse()
    out, _ = _reduce_pair(num, den, src)
    return out


def parse_ratfunc(src: str) -> RatFunc:
    """Parse an expression in t alone into a normalized rational function."""
    num, den = _Parser(src).parse()
    if num.deg_x or num.deg_y or den.deg_x or den.deg_y:
        raise ParseError(f"X and Y are not allowed in {src!r}", 0)
    n = num.coeff(0, 0)
    d = den.coeff(0, 0)
    if d.is_zero:
        raise DivisionByZeroPoly("division by zero expression")
    return n / d


def parse_place(src: str) -> Place:
    """Parse a place: "inf", a rational literal a (meaning t - a), or a
    monic polynomial in t."""
    text = src.strip()
    if text == "inf":
        return Place.infinity()
    try:
        return Place.rational(Fraction(text))
    except ValueError:
        pass
    f = parse_ratfunc(text)
    if f.den != Poly.one():
        raise ParseError(f"a place must be a polynomial: {src!r}", 0)
    return Place.finite(f.num)


def render_bipoly(A: BiPoly) -> str:
    """Render a BiPoly in the expression grammar (re-parseable)."""
    if A.is_zero:
        return "0"
    parts = []
    for (i, j), c in sorted(A.coeffs.items(), reverse=True):
        factors = []
        if not (c == RatFunc.one() and (i or j)):
            factors.append(render_ratfunc_expr(c))
        if i:
            factors.append("X" + (f"^{i}" if i > 1 else ""))
        if j:
            factors.append("Y" + (f"^{j}" if j > 1 else ""))
        parts.append("*".join(factors))
    return " + ".join(parts)


def render_ratfunc_expr(f: RatFunc) -> str:
    """Render a RatFunc in the expression grammar (re-parseable)."""
    if f.den == Poly.one():
        return f"({render_poly(f.num)})"
    return f"({render_poly(f.num)})/({render_poly(f.den)})"

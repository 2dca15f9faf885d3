"""Shared builders and independent oracles for the test suite.

The oracles here deliberately avoid the code paths they check: order sums
and truncated counts are recomputed from a full sympy factorization, and
projective heights from the per-place definition.
"""

from __future__ import annotations

import random
from fractions import Fraction

import sympy

from ffvojta.field_core import Poly, RatFunc
from ffvojta.sunits import PlaceSet


def rat(expr: str) -> RatFunc:
    from ffvojta.parser import parse_ratfunc

    return parse_ratfunc(expr)


def bi(expr: str):
    from ffvojta.parser import parse_bipoly

    return parse_bipoly(expr)


def rand_poly(rng: random.Random, max_deg: int, zero_ok: bool = False) -> Poly:
    while True:
        deg = rng.randint(0, max_deg)
        coeffs = [Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2, 3)))
                  for _ in range(deg + 1)]
        p = Poly(coeffs)
        if zero_ok or not p.is_zero:
            return p


def rand_ratfunc(rng: random.Random, max_deg: int = 3) -> RatFunc:
    num = rand_poly(rng, max_deg)
    den = rand_poly(rng, max_deg)
    return RatFunc(num, den)


SYMPY_T = sympy.Symbol("t")


def to_sympy(p: Poly):
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)]
        or [0],
        SYMPY_T, domain="QQ")


def sympy_factor_multiplicities(p: Poly) -> list[tuple[Poly, int]]:
    """Full irreducible factorization via sympy, monic factors."""
    _, factors = to_sympy(p).factor_list()
    out = []
    for fac, mult in factors:
        coeffs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        out.append((Poly(coeffs).monic(), int(mult)))
    return out


def oracle_trunc_count(f: RatFunc, S: PlaceSet) -> int:
    """Brute-force truncated count from the full factorization."""
    s_finite = {p.poly.coeffs for p in S.finite_places()}
    total = 0
    for fac, m in sympy_factor_multiplicities(f.num):
        if fac.coeffs in s_finite:
            continue
        if m >= 2:
            total += (m - 1) * fac.degree
    if not S.has_infinity:
        inf_ord = f.den.degree - f.num.degree
        if inf_ord >= 2:
            total += inf_ord - 1
    return total


def oracle_min_ord_sum(f: RatFunc, g: RatFunc, S: PlaceSet) -> int:
    """Brute-force min-order sum from the full factorizations."""
    s_finite = {p.poly.coeffs for p in S.finite_places()}
    mf = {fac.coeffs: m for fac, m in sympy_factor_multiplicities(f.num)}
    mg = {fac.coeffs: m for fac, m in sympy_factor_multiplicities(g.num)}
    total = 0
    for key, m in mf.items():
        if key in s_finite or key not in mg:
            continue
        total += min(m, mg[key]) * (len(key) - 1)
    if not S.has_infinity:
        total += min(f.den.degree - f.num.degree, g.den.degree - g.num.degree)
    return total


def oracle_proj_height(fs) -> int:
    """Projective height from the per-place definition."""
    from ffvojta.field_core import divisor_of, ord_at

    places = set()
    for f in fs:
        if not f.is_zero and not f.is_constant:
            places |= divisor_of(f).support()
    total = 0
    for p in places:
        orders = [ord_at(f, p) for f in fs if not f.is_zero]
        total += p.geom_degree * min(orders)
    return -total


def unit_over(S: PlaceSet, rng: random.Random, max_exp: int):
    """One random valid S-unit (exponents balanced when needed)."""
    from ffvojta.sunits import SUnit

    finite = S.finite_places()
    while True:
        exps = {p: rng.randint(-max_exp, max_exp) for p in finite}
        if S.has_infinity or sum(e * p.geom_degree for p, e in exps.items()) == 0:
            break
    const = Fraction(rng.choice((1, -1, 2, -2, 3, 5)),
                     rng.choice((1, 1, 2, 3)))
    return SUnit.make(const, exps, S)

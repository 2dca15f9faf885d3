import itertools
import random
from fractions import Fraction

import pytest

from ffvojta.bipoly import (
    BiPoly,
    BothZero,
    ConstantPolynomial,
    DegenerateDegree,
    PreconditionViolated,
    UniPoly,
    b_polynomial,
    bipoly_gcd,
    check_dependence_transfer,
    evaluate,
    has_repeated_factors,
    poly_height,
    rational_roots,
    resultant_x,
    resultant_y,
    specialization_irreducibility_audit,
    torus_derivative,
)
from ffvojta.field_core import (
    Place,
    Poly,
    RatFunc,
    ZeroPolynomial,
    choose_omega,
    deriv_omega,
)
from ffvojta.sunits import PlaceSet, SUnit, as_ratfunc
from conftest import bi, rat, rand_ratfunc, unit_over


P0 = Place.rational(0)
P1 = Place.rational(1)
S01 = PlaceSet.of(0, "inf")
S011 = PlaceSet.of(0, 1, "inf")


def rand_bipoly(rng, max_dx=2, max_dy=2, fancy_coeffs=True):
    out = {}
    for i in range(max_dx + 1):
        for j in range(max_dy + 1):
            if rng.random() < 0.45:
                continue
            if fancy_coeffs and rng.random() < 0.3:
                c = rand_ratfunc(rng, 2)
            else:
                c = RatFunc.const(Fraction(rng.randint(-3, 3)))
            out[(i, j)] = c
    return BiPoly(out)


class TestEvaluate:
    def test_examples(self):
        assert evaluate(bi("X+Y+1"), RatFunc.t(), RatFunc.t()) == rat("2*t+1")
        assert evaluate(bi("X*Y-t"), RatFunc.t(), RatFunc.one()).is_zero
        assert evaluate(bi("X^2+Y"), RatFunc.t(), rat("-t^2")).is_zero


class TestPolyHeight:
    def test_examples(self):
        assert poly_height(bi("X+Y+1")) == 0
        assert poly_height(bi("X*Y-t")) == 1
        assert poly_height(bi("(t^2)*X + (1/(t-1))*Y")) == 2

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            poly_height(BiPoly.zero())


class TestBPolynomial:
    def test_linear_example(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        v = SUnit.make(1, {P0: 2}, S01)
        B = b_polynomial(bi("X+Y+1"), u, v, w)
        assert B == bi("X + 2*Y")

    def test_constant_a(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        B = b_polynomial(BiPoly.const(rat("5")), u, u, w)
        assert B.is_zero

    def test_nonconstant_coefficient(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        B = b_polynomial(bi("X*Y-t"), u, u, w)
        assert B == bi("2*X*Y - t")

    def test_derivation_identity(self):
        rng = random.Random(77)
        w = choose_omega(S011.places)
        for _ in range(60):
            A = rand_bipoly(rng)
            u = unit_over(S011, rng, 3)
            v = unit_over(S011, rng, 3)
            B = b_polynomial(A, u, v, w)
            U, V = as_ratfunc(u), as_ratfunc(v)
            assert deriv_omega(evaluate(A, U, V), w) == evaluate(B, U, V)


class TestTorusDerivative:
    def test_examples(self):
        assert torus_derivative(bi("X*Y-t"), 1, 1).is_zero
        assert torus_derivative(bi("X+Y"), 1, 1) == bi("X-Y")
        assert torus_derivative(bi("X^2"), 0, 1) == bi("2*X^2")

    def test_both_zero_rejected(self):
        with pytest.raises(BothZero):
            torus_derivative(bi("X+Y"), 0, 0)


def _perm_resultant(a: list[RatFunc], b: list[RatFunc]) -> RatFunc:
    """Independent univariate resultant over Q(t): permanent-style expansion
    of the Sylvester determinant with RatFunc entries."""
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows = []
    for k in range(n):
        row = [RatFunc.zero()] * size
        for idx, c in enumerate(reversed(a)):
            row[k + idx] = c
        rows.append(row)
    for k in range(m):
        row = [RatFunc.zero()] * size
        for idx, c in enumerate(reversed(b)):
            row[k + idx] = c
        rows.append(row)
    total = RatFunc.zero()
    for perm in itertools.permutations(range(size)):
        sign = 1
        seen = [False] * size
        for start in range(size):
            if seen[start]:
                continue
            length = 0
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
        term = RatFunc.one()
        for i in range(size):
            term = term * rows[i][perm[i]]
            if term.is_zero:
                break
        total = total + (term if sign > 0 else -term)
    return total


class TestResultants:
    def test_examples(self):
        r = resultant_y(bi("X+Y"), bi("X-Y"))
        assert r == UniPoly((RatFunc.zero(), RatFunc.const(2)))

        assert resultant_y(bi("Y-t"), bi("Y-t")).is_zero

        r2 = resultant_y(bi("Y^2-X"), bi("Y-1"))
        assert r2 == UniPoly((RatFunc.one(), RatFunc.const(-1)))

    def test_degenerate_degree(self):
        with pytest.raises(DegenerateDegree):
            resultant_y(bi("X+1"), bi("X+Y"))
        with pytest.raises(DegenerateDegree):
            resultant_x(bi("Y+1"), bi("X+Y"))

    def test_specialization_property(self):
        rng = random.Random(88)
        done = 0
        while done < 100:
            A = rand_bipoly(rng, 2, 2, fancy_coeffs=False)
            B = rand_bipoly(rng, 2, 2, fancy_coeffs=False)
            if A.deg_y == 0 or B.deg_y == 0:
                continue
            res = resultant_y(A, B)
            for _ in range(10):
                if done >= 100:
                    break
                x0 = RatFunc.const(
                    Fraction(rng.randint(1, 30), rng.randint(1, 3)))
                a_spec = [evaluate(BiPoly({(i, 0): c for (i, jj), c in
                                           A.coeffs.items() if jj == j}), x0,
                                   RatFunc.zero())
                          for j in range(A.deg_y + 1)]
                b_spec = [evaluate(BiPoly({(i, 0): c for (i, jj), c in
                                           B.coeffs.items() if jj == j}), x0,
                                   RatFunc.zero())
                          for j in range(B.deg_y + 1)]
                # only degree-preserving specializations
                if a_spec[-1].is_zero or b_spec[-1].is_zero:
                    continue
                assert res.eval(x0) == _perm_resultant(a_spec, b_spec)
                done += 1

    def test_vanishes_iff_common_factor(self):
        shared = bi("Y - t*X")
        A = shared * bi("X+Y+1")
        B = shared * bi("X-Y+2")
        assert resultant_y(A, B).is_zero
        assert not resultant_y(bi("X+Y+1"), bi("X-Y+2")).is_zero


class TestRepeatedFactors:
    def test_examples(self):
        assert has_repeated_factors(bi("(X+Y)^2"))
        assert not has_repeated_factors(bi("X*Y-t"))
        assert has_repeated_factors(bi("X^2*Y"))

    def test_constant_rejected(self):
        with pytest.raises(ConstantPolynomial):
            has_repeated_factors(BiPoly.const(rat("t")))

    def test_squarefree_products(self):
        assert not has_repeated_factors(bi("(X+Y)*(X-Y)*(X+2*Y+1)"))
        assert has_repeated_factors(bi("(X+t*Y)^2*(X-Y)"))

    def test_gcd_basics(self):
        g = bipoly_gcd(bi("(X+Y)*(X-Y)"), bi("(X+Y)*(X+1)"))
        assert not g.is_constant
        assert g.deg_x == 1 and g.deg_y == 1
        assert bipoly_gcd(bi("X+Y"), bi("X-Y")).is_constant


class TestRationalRoots:
    def test_examples(self):
        t = RatFunc.t()
        F = UniPoly((-(t * t), RatFunc.zero(), RatFunc.one()))
        roots, complete = rational_roots(F)
        assert complete and sorted(str(r) for r in roots) == ["-t", "t"]

        F2 = UniPoly((-t, RatFunc.zero(), RatFunc.one()))
        assert rational_roots(F2) == ([], False)

        F3 = UniPoly((RatFunc.one(), RatFunc.const(-2), RatFunc.one()))
        roots3, complete3 = rational_roots(F3)
        assert complete3 and roots3 == [RatFunc.one(), RatFunc.one()]

    def test_roots_satisfy(self):
        rng = random.Random(99)
        for _ in range(40):
            target_roots = [rand_ratfunc(rng, 1) for _ in range(rng.randint(1, 3))]
            F = UniPoly((RatFunc.one(),))
            for r in target_roots:
                F = F * UniPoly((-r, RatFunc.one()))
            found, complete = rational_roots(F)
            assert complete
            for r in found:
                assert F.eval(r).is_zero
            assert sorted(map(str, found)) == sorted(map(str, target_roots))

    def test_denominator_roots(self):
        # roots with nontrivial denominators: (X - 1/t)(X - (t+1)/t)
        r1, r2 = rat("1/t"), rat("(t+1)/t")
        F = UniPoly((-r1, RatFunc.one())) * UniPoly((-r2, RatFunc.one()))
        found, complete = rational_roots(F)
        assert complete and sorted(map(str, found)) == sorted(map(str, [r1, r2]))

    def test_zero_rejected(self):
        with pytest.raises(ZeroPolynomial):
            rational_roots(UniPoly.zero())


class TestDependenceTransfer:
    def test_ray_case(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        v = SUnit.make(1, {P0: -1}, S01)
        out = check_dependence_transfer(
            bi("X*Y-1"), u, v, RatFunc.one(), RatFunc.one(), 1, 1,
            Fraction(1), w)
        assert out.kind == "gamma"
        assert out.gamma == RatFunc.one()
        assert out.branch == "ray"
        assert as_ratfunc(u) * as_ratfunc(v) == out.gamma

    def test_constant_quotient(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        v = SUnit.make(1, {P0: -1}, S01)
        alpha = RatFunc(Poly((0, Fraction(1, 2))))
        out = check_dependence_transfer(
            bi("X*Y-1"), u, v, alpha, RatFunc.one() / alpha, 1, 0,
            Fraction(2), w)
        assert out.kind == "constant_quotient"
        assert out.which == "first"

    def test_bezout_case(self):
        # A = X+Y+1, u = t^2, v = t; (alpha, beta) = (1, -2) kills A and B,
        # and (u/1)(v/-2)^-2 = 4
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 2}, S01)
        v = SUnit.make(1, {P0: 1}, S01)
        out = check_dependence_transfer(
            bi("X+Y+1"), u, v, RatFunc.one(), RatFunc.const(-2), 1, -2,
            Fraction(4), w)
        assert out.kind == "gamma"
        assert out.branch == "bezout"
        assert out.gamma == RatFunc.one()
        assert as_ratfunc(u) ** 1 * as_ratfunc(v) ** -2 == out.gamma

    def test_precondition_failures(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        v = SUnit.make(1, {P0: -1}, S01)
        with pytest.raises(PreconditionViolated, match="gcd"):
            check_dependence_transfer(bi("X*Y-1"), u, v, RatFunc.one(),
                                      RatFunc.one(), 2, 2, Fraction(1), w)
        with pytest.raises(PreconditionViolated, match="alpha, beta"):
            check_dependence_transfer(bi("X+Y"), u, v, RatFunc.zero(),
                                      RatFunc.zero(), 1, 1, Fraction(1), w)
        with pytest.raises(PreconditionViolated, match=r"A\(alpha"):
            check_dependence_transfer(bi("X+Y+1"), u, v, RatFunc.one(),
                                      RatFunc.one(), 1, 1, Fraction(1), w)
        with pytest.raises(PreconditionViolated, match="mu"):
            check_dependence_transfer(bi("X*Y-1"), u, v, RatFunc.one(),
                                      RatFunc.one(), 2, 1, Fraction(1), w)

    def test_gamma_identity_reasserted(self):
        # run the ray case over several unit pairs u * v = const
        w = choose_omega(S011.places)
        rng = random.Random(123)
        for _ in range(20):
            a = rng.randint(-3, 3)
            b = rng.randint(-3, 3)
            if (a, b) == (0, 0):
                continue
            u = SUnit.make(1, {P0: a, P1: b}, S011)
            v = SUnit.make(2, {P0: -a, P1: -b}, S011)
            out = check_dependence_transfer(
                bi("X*Y-2"), u, v, RatFunc.one(), RatFunc.const(2), 1, 1,
                Fraction(1), w)
            assert out.kind == "gamma"
            assert as_ratfunc(u) * as_ratfunc(v) == out.gamma


class TestIrreducibilityAudit:
    def test_supports_fixtures(self):
        assert specialization_irreducibility_audit(bi("X+Y+1"))
        assert specialization_irreducibility_audit(bi("X*Y-t"))
        assert specialization_irreducibility_audit(
            bi("X^2*Y+X*Y^2-t*(X+Y)+1"))

    def test_rejects_products(self):
        assert not specialization_irreducibility_audit(
            bi("(X+Y+1)*(X-Y+t)"))

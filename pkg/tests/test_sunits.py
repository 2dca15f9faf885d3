import random
from fractions import Fraction

import pytest

from ffvojta.field_core import (
    Place,
    Poly,
    RatFunc,
    choose_omega,
    deriv_omega,
    divisor_of,
    height,
    poly_gcd,
)
from ffvojta.sunits import (
    InvalidSUnit,
    PlaceSet,
    SUnit,
    as_ratfunc,
    enlarge_for_coefficients,
    euler_char,
    generate,
    log_derivative,
    mult_dependence,
    sunit_from_json,
    sunit_from_ratfunc,
    sunit_to_json,
)
from conftest import rat, unit_over


P0 = Place.rational(0)
P1 = Place.rational(1)
PM1 = Place.rational(-1)
INF = Place.infinity()

S01 = PlaceSet.of(0, "inf")
S011 = PlaceSet.of(0, 1, "inf")


class TestEulerChar:
    def test_examples(self):
        assert euler_char(S01) == 0
        assert euler_char(S011) == 1
        assert euler_char(PlaceSet.of(Poly((1, 0, 1)), "inf")) == 1

    def test_nonempty_required(self):
        with pytest.raises(ValueError):
            PlaceSet(frozenset())


class TestSUnit:
    def test_as_ratfunc_examples(self):
        u = SUnit.make(3, {P0: 2}, S01)
        assert as_ratfunc(u) == rat("3*t^2")
        v = SUnit.make(1, {P0: 1, P1: -1}, S011)
        assert as_ratfunc(v) == rat("t/(t-1)")
        assert as_ratfunc(SUnit.make(1, {}, S01)) == RatFunc.one()

    def test_validation(self):
        with pytest.raises(InvalidSUnit):
            SUnit.make(0, {}, S01)
        with pytest.raises(InvalidSUnit):
            SUnit.make(1, {P1: 1}, S01)  # place outside S
        no_inf = PlaceSet.of(0, 1)
        with pytest.raises(InvalidSUnit):
            SUnit.make(1, {P0: 1}, no_inf)  # unbalanced without infinity
        balanced = SUnit.make(1, {P0: 1, P1: -1}, no_inf)
        assert balanced.inf_order == 0

    def test_from_ratfunc_roundtrip(self):
        u = sunit_from_ratfunc(rat("(-3/2)*t^2/(t-1)"), S011)
        assert as_ratfunc(u) == rat("(-3/2)*t^2/(t-1)")
        with pytest.raises(InvalidSUnit):
            sunit_from_ratfunc(rat("t-2"), S011)

    def test_json_roundtrip(self):
        u = SUnit.make(Fraction(3, 2), {P0: 2, P1: -1}, S011)
        data = sunit_to_json(u)
        assert data["constant"] == "3/2"
        assert data["exponents"] == {"0": 2, "1": -1}
        assert sunit_from_json(data, S011) == u


class TestLogDerivative:
    def test_spec_examples(self):
        w = choose_omega(S01.places)
        u = SUnit.make(1, {P0: 1}, S01)
        theta = log_derivative(u, w)
        assert theta == RatFunc.one()
        assert height(theta) == 0 == euler_char(S01)

        assert log_derivative(SUnit.make(7, {}, S01), w).is_zero

        w2 = choose_omega(S011.places)
        assert w2.denominator == Poly.t().monic()
        v = SUnit.make(1, {P0: 1, P1: -1}, S011)
        theta2 = log_derivative(v, w2)
        assert theta2 == rat("-1/(t-1)")
        assert height(theta2) == 1 == euler_char(S011)

    def test_matches_derivative_quotient(self):
        rng = random.Random(5)
        w = choose_omega(S011.places)
        for _ in range(100):
            u = unit_over(S011, rng, 4)
            f = as_ratfunc(u)
            if u.is_constant:
                continue
            assert log_derivative(u, w) == deriv_omega(f, w) / f

    def test_additive(self):
        rng = random.Random(6)
        w = choose_omega(S011.places)
        for _ in range(60):
            u = unit_over(S011, rng, 4)
            v = unit_over(S011, rng, 4)
            assert log_derivative(u * v, w) == \
                log_derivative(u, w) + log_derivative(v, w)

    def test_bound_and_simple_poles(self):
        rng = random.Random(7)
        for spec in ((0, "inf"), (0, 1, "inf"), (0, 1, -1, "inf")):
            S = PlaceSet.of(*spec)
            w = choose_omega(S.places)
            chi = euler_char(S)
            for _ in range(200):
                u = unit_over(S, rng, 5)
                theta = log_derivative(u, w)
                if theta.is_zero:
                    continue
                assert height(theta) <= chi
                den = theta.den
                assert poly_gcd(den, den.derivative()).degree == 0


class TestDependence:
    def test_spec_examples(self):
        u = SUnit.make(1, {P0: 2}, S01)
        v = SUnit.make(1, {P0: 3}, S01)
        d = mult_dependence(u, v)
        assert (d.dependent, d.r, d.s) == (True, 3, -2)
        assert d.gamma == RatFunc.one()

        d2 = mult_dependence(SUnit.make(1, {P0: 1}, S011),
                             SUnit.make(1, {P1: 1}, S011))
        assert not d2.dependent

        d3 = mult_dependence(SUnit.make(4, {P0: 2}, S01),
                             SUnit.make(2, {P0: 1}, S01))
        assert (d3.r, d3.s) == (1, -2)
        assert d3.gamma == RatFunc.one()

    def test_self_dependence(self):
        rng = random.Random(8)
        for _ in range(50):
            u = unit_over(S011, rng, 4)
            if u.is_constant:
                continue
            d = mult_dependence(u, u)
            assert (d.r, d.s) == (1, -1)
            assert d.gamma == RatFunc.one()

    def test_gamma_identity_exact(self):
        rng = random.Random(9)
        hits = 0
        for _ in range(300):
            u = unit_over(S011, rng, 3)
            base = unit_over(S011, rng, 2)
            k = rng.randint(-3, 3)
            v = base if rng.random() < 0.5 else u ** k if k else u
            d = mult_dependence(u, v)
            if d.dependent:
                hits += 1
                assert as_ratfunc(u) ** d.r * as_ratfunc(v) ** d.s == d.gamma
                assert d.r > 0 or (d.r == 0 and d.s > 0)
        assert hits > 20


class TestGenerate:
    def test_shape_contract(self):
        units = generate(S01, 3, 2, 42)
        assert len(units) == 2
        for u in units:
            assert all(abs(e) <= 3 for _, e in u.exponents)
            assert set(p for p, _ in u.exponents) <= {P0}

    def test_empty(self):
        assert generate(S011, 4, 0, 1) == []

    def test_deterministic(self):
        a = generate(S011, 5, 40, 77)
        b = generate(S011, 5, 40, 77)
        assert a == b
        c = generate(S011, 5, 40, 78)
        assert a != c

    def test_supported_in_s(self):
        for u in generate(S011, 6, 50, 3):
            f = as_ratfunc(u)
            if f.is_constant:
                continue
            assert divisor_of(f).support() <= S011.places

    def test_balanced_without_infinity(self):
        S = PlaceSet.of(0, 1)
        for u in generate(S, 4, 30, 9):
            assert u.inf_order == 0


class TestEnlarge:
    def test_examples(self):
        S2 = enlarge_for_coefficients(S01, [rat("t-1")])
        assert S2.places == S011.places

        assert enlarge_for_coefficients(S011, [RatFunc.const(4)]) == S011

        S3 = enlarge_for_coefficients(PlaceSet.of("inf"), [rat("(t^2+1)/t")])
        assert S3.places == {P0, Place.finite(Poly((1, 0, 1))), INF}

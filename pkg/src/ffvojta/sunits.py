"""S-units over Q(t): representation, generation, and dependence tests.

An S-unit is stored multiplicatively as a constant times integer powers of
the finite places of S; the order at infinity is never stored, it is forced
by the degree-zero balance of a principal divisor.  Multiplicative
dependence modulo constants is exactly Z-linear dependence of the exponent
vectors, which keeps the test a two-row integer kernel computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .field_core import (
    OmegaForm,
    Place,
    Poly,
    RatFunc,
    ZeroFunction,
    divisor_of,
)


class InvalidSUnit(ValueError):
    """Raised when an S-unit's divisor is not supported in its place set."""


@dataclass(frozen=True)
class PlaceSet:
    """A finite nonempty set of places, with its total geometric degree."""

    places: frozenset[Place]

    def __post_init__(self):
        if not self.places:
            raise ValueError("a place set must be nonempty")

    @staticmethod
    def of(*places) -> "PlaceSet":
        out = set()
        for p in places:
            if isinstance(p, Place):
                out.add(p)
            elif p == "inf":
                out.add(Place.infinity())
            elif isinstance(p, Poly):
                out.add(Place.finite(p))
            else:
                out.add(Place.rational(p))
        return PlaceSet(frozenset(out))

    @property
    def geometric_size(self) -> int:
        return sum(p.geom_degree for p in self.places)

    @property
    def has_infinity(self) -> bool:
        return any(p.is_infinity for p in self.places)

    def finite_places(self) -> list[Place]:
        return sorted((p for p in self.places if not p.is_infinity),
                      key=lambda p: p.sort_key())

    def sorted_places(self) -> list[Place]:
        return sorted(self.places, key=lambda p: p.sort_key())

    def __contains__(self, place: Place) -> bool:
        return place in self.places

    def union(self, other: "PlaceSet") -> "PlaceSet":
        return PlaceSet(self.places | other.places)

    def __str__(self) -> str:
        return "{" + ", ".join(str(p) for p in self.sorted_places()) + "}"


def euler_char(S: PlaceSet) -> int:
    """Euler characteristic of the complement of S in the genus-zero curve."""
    return S.geometric_size - 2


@dataclass(frozen=True)
class SUnit:
    """constant * prod place^exponent, with divisor supported in `places`.

    ``exponents`` holds (finite place, nonzero exponent) pairs sorted in the
    canonical place order; the order at infinity is derived.
    """

    constant: Fraction
    exponents: tuple[tuple[Place, int], ...]
    places: PlaceSet

    @staticmethod
    def make(constant, exponents: dict[Place, int], S: PlaceSet) -> "SUnit":
        c = Fraction(constant)
        if c == 0:
            raise InvalidSUnit("the constant of an S-unit must be nonzero")
        clean = []
        for p, e in exponents.items():
            if e == 0:
                continue
            if p.is_infinity:
                raise InvalidSUnit("the order at infinity is derived, not stored")
            if p not in S:
                raise InvalidSUnit(f"place {p} is not in S")
            clean.append((p, int(e)))
        clean.sort(key=lambda pe: pe[0].sort_key())
        u = SUnit(c, tuple(clean), S)
        if not S.has_infinity and u.inf_order != 0:
            raise InvalidSUnit(
                "infinity is not in S but the exponents do not balance")
        return u

    @property
    def inf_order(self) -> int:
        return -sum(e * p.geom_degree for p, e in self.exponents)

    @property
    def is_constant(self) -> bool:
        return not self.exponents

    def exponent_map(self) -> dict[Place, int]:
        return dict(self.exponents)

    def __mul__(self, other: "SUnit") -> "SUnit":
        merged = self.exponent_map()
        for p, e in other.exponents:
            merged[p] = merged.get(p, 0) + e
        return SUnit.make(self.constant * other.constant, merged,
                          self.places.union(other.places))

    def __pow__(self, n: int) -> "SUnit":
        return SUnit.make(self.constant ** n,
                          {p: e * n for p, e in self.exponents}, self.places)

    def __str__(self) -> str:
        parts = [str(self.constant)]
        for p, e in self.exponents:
            parts.append(f"({p})^{e}")
        return " * ".join(parts)


def as_ratfunc(u: SUnit) -> RatFunc:
    """Exact expansion of an S-unit into a rational function."""
    num = Poly.const(u.constant)
    den = Poly.one()
    for p, e in u.exponents:
        if e > 0:
            num = num * p.poly ** e
        else:
            den = den * p.poly ** (-e)
    return RatFunc(num, den)


def sunit_from_ratfunc(f: RatFunc, S: PlaceSet) -> SUnit:
    """Validate that f is an S-unit and recover its exponent form."""
    if f.is_zero:
        raise ZeroFunction("zero is not an S-unit")
    exps: dict[Place, int] = {}
    for p, c in divisor_of(f).items():
        if p.is_infinity:
            continue
        if p not in S:
            raise InvalidSUnit(f"divisor of {f} meets {p}, outside S")
        exps[p] = c
    if not S.has_infinity and f.den.degree != f.num.degree:
        raise InvalidSUnit("nonzero order at infinity but infinity not in S")
    lead = Fraction(f.num.lc, f.den.lc)
    return SUnit.make(lead, exps, S)


def log_derivative(u: SUnit, w: OmegaForm) -> RatFunc:
    """The function d(u)/u measured against the form w.

    For u = c * prod p^e this is q * sum e p'/p with q the form's
    denominator.  With the form's poles inside S it has only simple poles
    and height at most the Euler characteristic of the complement of S.
    """
    q = RatFunc(w.denominator)
    total = RatFunc.zero()
    for p, e in u.exponents:
        total = total + e * q * RatFunc(p.poly.derivative(), p.poly)
    return total


@dataclass(frozen=True)
class DependenceResult:
    """Outcome of the multiplicative dependence test for a unit pair."""

    dependent: bool
    r: int = 0
    s: int = 0
    gamma: RatFunc | None = None

    @staticmethod
    def independent() -> "DependenceResult":
        return DependenceResult(False)

    @staticmethod
    def of(r: int, s: int, gamma: RatFunc) -> "DependenceResult":
        if (r, s) == (0, 0):
            raise ValueError("a dependence needs a nonzero exponent pair")
        if int_gcd(abs(r), abs(s)) != 1:
            raise ValueError("the exponent pair must be primitive")
        return DependenceResult(True, r, s, gamma)


def _normalize_pair(r: int, s: int) -> tuple[int, int]:
    g = int_gcd(abs(r), abs(s))
    r, s = r // g, s // g
    if r < 0 or (r == 0 and s < 0):
        r, s = -r, -s
    return r, s


def mult_dependence(u: SUnit, v: SUnit) -> DependenceResult:
    """Test Z-linear dependence of the exponent vectors of u and v.

    Returns the primitive kernel pair (r, s), normalized to r > 0 or
    (r = 0 and s > 0), together with the exact constant gamma = u^r v^s.
    """
    places = sorted({p for p, _ in u.exponents} | {p for p, _ in v.exponents},
                    key=lambda p: p.sort_key())
    eu = u.exponent_map()
    ev = v.exponent_map()
    a = [eu.get(p, 0) for p in places]
    b = [ev.get(p, 0) for p in places]

    def gamma_for(r: int, s: int) -> RatFunc:
        value = Fraction(1)
        merged: dict[Place, int] = {}
        for p in places:
            merged[p] = r * eu.get(p, 0) + s * ev.get(p, 0)
        assert all(e == 0 for e in merged.values())
        value = (Fraction(u.constant) ** r) * (Fraction(v.constant) ** s)
        return RatFunc.const(value)

    if not any(a) and not any(b):
        r, s = 1, -1
        return DependenceResult.of(r, s, gamma_for(r, s))
    if not any(a):
        return DependenceResult.of(1, 0, gamma_for(1, 0))
    if not any(b):
        return DependenceResult.of(0, 1, gamma_for(0, 1))
    for i in range(len(places)):
        for j in range(i + 1, len(places)):
            if a[i] * b[j] - a[j] * b[i] != 0:
                return DependenceResult.independent()
    # Both vectors are nonzero multiples of one primitive direction.
    g = 0
    for x in a:
        g = int_gcd(g, x)
    direction = [x // g for x in a]
    k = next(i for i, x in enumerate(direction) if x)
    m = a[k] // direction[k]
    n = b[k] // direction[k]
    r, s = _normalize_pair(n, -m)
    return DependenceResult.of(r, s, gamma_for(r, s))


CONSTANT_POOL = (
    Fraction(1), Fraction(-1), Fraction(2), Fraction(-2), Fraction(3),
    Fraction(1, 2), Fraction(-1, 2), Fraction(3, 2), Fraction(5), Fraction(-3),
)


def _unit_at_index(S: PlaceSet, max_exponent: int, seed: int, index: int) -> SUnit:
    rng = random.Random(f"sunit:{seed}:{index}")
    finite = S.finite_places()
    while True:
        exps = {p: rng.randint(-max_exponent, max_exponent) for p in finite}
        if S.has_infinity:
            break
        if sum(e * p.geom_degree for p, e in exps.items()) == 0:
            break
    constant = rng.choice(CONSTANT_POOL)
    return SUnit.make(constant, exps, S)


def generate(S: PlaceSet, max_exponent: int, count: int, seed: int) -> list[SUnit]:
    """Seeded batch of S-units; unit i depends only on (seed, i).

    The per-index seeding makes any partition of the batch across workers
    reproduce the same units.
    """
    if max_exponent < 1:
        raise ValueError("max_exponent must be at least 1")
    if count < 0:
        raise ValueError("count must be nonnegative")
    return [_unit_at_index(S, max_exponent, seed, i) for i in range(count)]


def enlarge_for_coefficients(S: PlaceSet, fs) -> PlaceSet:
    """S together with the zeros and poles of every given function."""
    places = set(S.places)
    for f in fs:
        if f.is_zero:
            raise ZeroFunction("cannot enlarge by the zero function")
        if f.is_constant:
            continue
        places.update(divisor_of(f).support())
    return PlaceSet(frozenset(places))


def sunit_to_json(u: SUnit) -> dict:
    return {
        "constant": str(u.constant),
        "exponents": {str(p): e for p, e in u.exponents},
    }


def sunit_from_json(data: dict, S: PlaceSet) -> SUnit:
    from .parser import parse_place

    constant = Fraction(data["constant"])
    exps = {parse_place(k): int(v) for k, v in data.get("exponents", {}).items()}
    return SUnit.make(constant, exps, S)

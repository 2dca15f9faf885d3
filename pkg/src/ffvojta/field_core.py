"""Exact arithmetic in Q(t), places and divisors on the projective line.

Everything here is immutable and exact: polynomials are tuples of
`fractions.Fraction` coefficients (lowest degree first), rational functions
are coprime numerator/denominator pairs with monic denominator, and a place
is either a monic irreducible polynomial over Q or the point at infinity.
Geometric counts always weight a place by its degree, so the sums over
"all points" of the algebraically closed picture stay exact over Q.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd as int_gcd

import sympy


class ZeroFunction(ValueError):
    """Raised when an order/height operation receives the zero function."""


class AllZero(ValueError):
    """Raised when a projective height is requested for an all-zero tuple."""


class ZeroPolynomial(ValueError):
    """Raised when a decomposition is requested for the zero polynomial."""


class STooSmall(ValueError):
    """Raised when a place set cannot carry a two-pole differential form."""


class NotIrreducible(ValueError):
    """Raised when a finite place is built from a reducible polynomial."""


class PlaceDegreeTooLarge(ValueError):
    """Raised when a place polynomial exceeds the supported degree."""


# Finite places are validated by trial factorization; this is the cap on the
# degree we are willing to certify.
PLACE_DEGREE_CAP = 8

# When True, height() cross-checks the degree formula against the
# divisor-based definition.  Off by default: the check factors the
# numerator and denominator on every call.
DEBUG_CHECKS = False


# ---------------------------------------------------------------------------
# Polynomials over Q
# ---------------------------------------------------------------------------

class Poly:
    """Univariate polynomial over Q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __reduce__(self):
        return (Poly, (self.coeffs,))

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @staticmethod
    def one() -> "Poly":
        return Poly((1,))

    @staticmethod
    def const(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def t() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly((0,) * k + (c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant polynomial")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def monic(self) -> "Poly":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        c = self.lc
        if c == 1:
            return self
        return Poly(tuple(a / c for a in self.coeffs))

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-a for a in self.coeffs))

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly()
        return Poly(tuple(a * c for a in self.coeffs))

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        d = other.degree
        lc = other.lc
        if len(rem) - 1 < d:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if c:
                q = c / lc
                quot[i - d] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] -= q * b
        return Poly(quot), Poly(rem)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def eval(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)!r})"


def render_poly(p: Poly, var: str = "t") -> str:
    """Render a polynomial in the expression grammar (re-parseable)."""
    if p.is_zero:
        return "0"
    parts = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        if i == 0:
            body = str(c if c > 0 else -c)
        else:
            mag = c if c > 0 else -c
            head = "" if mag == 1 else f"{mag}*"
            body = f"{head}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


# --- gcd machinery ---------------------------------------------------------

def _clear_to_int(p: Poly) -> list[int]:
    """Primitive integer coefficient list (lowest first) of a nonzero poly."""
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // int_gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = int_gcd(g, v)
    return [v // g for v in ints]


def _int_deg(a: list[int]) -> int:
    return len(a) - 1


def _int_prim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    if not a:
        return a
    g = 0
    for v in a:
        g = int_gcd(g, v)
    return [v // g for v in a]


def _int_pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer coefficient lists."""
    a = list(a)
    db, lb = _int_deg(b), b[-1]
    while _int_deg(a) >= db:
        da, la = _int_deg(a), a[-1]
        a = [c * lb for c in a]
        shift = da - db
        for j, bj in enumerate(b):
            a[shift + j] -= la * bj
        while a and a[-1] == 0:
            a.pop()
        if not a:
            break
    return a

_GCD_PRIMES = (2305843009213693951, 4611686018427387847, 2147483647)


def _mod_gcd_is_one(a: list[int], b: list[int]) -> bool:
    """True if gcd over Q is provably 1, via a single modular image."""
    for p in _GCD_PRIMES:
        if a[-1] % p == 0 or b[-1] % p == 0:
            continue
        fa = [c % p for c in a]
        fb = [c % p for c in b]
        while fb and any(fb):
            while fb and fb[-1] == 0:
                fb.pop()
            if not fb:
                break
            inv = pow(fb[-1], p - 2, p)
            fb = [c * inv % p for c in fb]
            db = len(fb) - 1
            while len(fa) - 1 >= db and any(fa):
                while fa and fa[-1] == 0:
                    fa.pop()
                if len(fa) - 1 < db:
                    break
                la = fa[-1]
                shift = len(fa) - 1 - db
                for j, c in enumerate(fb):
                    fa[shift + j] = (fa[shift + j] - la * c) % p
            fa, fb = fb, fa
            while fb and fb[-1] == 0:
                fb.pop()
        return len(fa) == 1
    return False


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd in Q[t], via integer primitive remainder sequences.

    A modular pre-check certifies the (common) coprime case without exact
    big-integer arithmetic.
    """
    if a.is_zero and b.is_zero:
        return Poly.zero()
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    ia, ib = _clear_to_int(a), _clear_to_int(b)
    if _int_deg(ia) < _int_deg(ib):
        ia, ib = ib, ia
    if _int_deg(ib) == 0:
        return Poly.one()
    if _mod_gcd_is_one(ia, ib):
        return Poly.one()
    while ib:
        r = _int_pseudo_rem(ia, ib)
        ia, ib = ib, _int_prim(r)
    return Poly(ia).monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero or b.is_zero:
        return Poly.zero()
    return ((a * b) // poly_gcd(a, b)).monic()


def yun_squarefree(p: Poly) -> list[tuple[Poly, int]]:
    """Squarefree decomposition p = c * prod f_i^{m_i} (Yun's algorithm).

    The f_i are monic, squarefree, pairwise coprime, and the multiplicities
    are strictly increasing.  Constants decompose to the empty list.
    """
    if p.is_zero:
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    f = p.monic()
    if f.degree == 0:
        return []
    d = poly_gcd(f, f.derivative())
    if d.degree == 0:
        return [(f, 1)]
    b = f // d
    c = f.derivative() // d
    z = c - b.derivative()
    out: list[tuple[Poly, int]] = []
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, z)
        if a.degree > 0:
            out.append((a, k))
        b = b // a
        c = z // a
        z = c - b.derivative()
        k += 1
    return out


# --- irreducible factorization (sympy-backed shim) -------------------------

_SYMPY_T = sympy.Symbol("t")


@lru_cache(maxsize=8192)
def _factor_cached(coeffs: tuple) -> tuple:
    spoly = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        _SYMPY_T,
        domain="QQ",
    )
    _, factors = spoly.factor_list()
    out = []
    for fac, mult in factors:
        cs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        out.append((Poly(cs).monic().coeffs, int(mult)))
    return tuple(out)


def factor_poly(p: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of p over Q, with multiplicities."""
    if p.is_zero:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    return [(Poly(cs), m) for cs, m in _factor_cached(p.coeffs)]


def is_irreducible(p: Poly) -> bool:
    if p.is_zero or p.degree < 1:
        return False
    facs = factor_poly(p)
    return len(facs) == 1 and facs[0][1] == 1


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RatFunc:
    """Element of Q(t): coprime numerator/denominator, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero:
            object.__setattr__(self, "num", Poly.zero())
            object.__setattr__(self, "den", Poly.one())
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num // g
            den = den // g
        c = den.lc
        if c != 1:
            num = num.scale(1 / c)
            den = den.scale(1 / c)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __reduce__(self):
        return (RatFunc, (self.num, self.den))

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(Poly.zero())

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(Poly.one())

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc(Poly.const(c))

    @staticmethod
    def t() -> "RatFunc":
        return RatFunc(Poly.t())

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.is_constant and self.den.is_constant

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant function")
        return self.num.constant_value()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RatFunc.const(other)
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return RatFunc.one()
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den, self.num) ** (-n)
        return RatFunc(self.num ** n, self.den ** n)

    def derivative_t(self) -> "RatFunc":
        """Derivative with respect to t."""
        return RatFunc(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def eval(self, x) -> Fraction:
        d = self.den.eval(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at t={x}")
        return self.num.eval(x) / d

    def __str__(self) -> str:
        return render_ratfunc(self)

    def __repr__(self) -> str:
        return f"RatFunc({render_ratfunc(self)!r})"


def render_ratfunc(f: RatFunc) -> str:
    if f.den == Poly.one():
        return render_poly(f.num)
    return f"({render_poly(f.num)})/({render_poly(f.den)})"


# ---------------------------------------------------------------------------
# Places and divisors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Place:
    """Closed point of the projective line over Q.

    ``poly`` is a monic irreducible polynomial for a finite place, or None
    for the point at infinity.  ``geom_degree`` counts the conjugate
    geometric points the place carries.
    """

    poly: Poly | None

    @staticmethod
    def infinity() -> "Place":
        return Place(None)

    @staticmethod
    def finite(p: Poly) -> "Place":
        if p.is_zero or p.degree < 1:
            raise NotIrreducible("a finite place needs degree >= 1")
        p = p.monic()
        if p.degree > PLACE_DEGREE_CAP:
            raise PlaceDegreeTooLarge(
                f"degree {p.degree} exceeds the cap {PLACE_DEGREE_CAP}")
        if not is_irreducible(p):
            raise NotIrreducible(f"{render_poly(p)} is reducible over Q")
        return Place(p)

    @staticmethod
    def rational(a) -> "Place":
        """The place t - a for a rational number a."""
        return Place(Poly((-Fraction(a), Fraction(1))))

    @staticmethod
    def _trusted(p: Poly) -> "Place":
        # For factorization output, already known irreducible; skips the
        # validation and the degree cap.
        return Place(p.monic())

    @property
    def is_infinity(self) -> bool:
        return self.poly is None

    @property
    def geom_degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        # Total order: finite before infinity; finite places by degree,
        # degree-1 places by their root, higher degrees by coefficients.
        if self.poly is None:
            return (1, 0, ())
        if self.poly.degree == 1:
            return (0, 1, (-self.poly.coeffs[0],))
        return (0, self.poly.degree, self.poly.coeffs)

    def __str__(self) -> str:
        if self.poly is None:
            return "inf"
        if self.poly.degree == 1:
            return str(-self.poly.coeffs[0])
        return render_poly(self.poly)

    def __repr__(self) -> str:
        return f"Place({str(self)!r})"


class Divisor:
    """Formal Z-combination of places; zero coefficients are dropped."""

    __slots__ = ("_data",)

    def __init__(self, data=None):
        clean = {}
        if data:
            for place, c in (data.items() if isinstance(data, dict) else data):
                c = int(c)
                if c:
                    clean[place] = clean.get(place, 0) + c
                    if clean[place] == 0:
                        del clean[place]
        object.__setattr__(self, "_data", dict(clean))

    def __reduce__(self):
        return (Divisor, (tuple(self._data.items()),))

    def coeff(self, place: Place) -> int:
        return self._data.get(place, 0)

    def support(self) -> set[Place]:
        return set(self._data)

    def items(self):
        return sorted(self._data.items(), key=lambda kv: kv[0].sort_key())

    def degree(self) -> int:
        return sum(c * p.geom_degree for p, c in self._data.items())

    def __len__(self) -> int:
        return len(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Divisor) and self._data == other._data

    def __hash__(self) -> int:
        return hash(frozenset(self._data.items()))

    def __add__(self, other: "Divisor") -> "Divisor":
        out = dict(self._data)
        for p, c in other._data.items():
            out[p] = out.get(p, 0) + c
        return Divisor(out)

    def __neg__(self) -> "Divisor":
        return Divisor({p: -c for p, c in self._data.items()})

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __str__(self) -> str:
        if not self._data:
            return "0"
        return " + ".join(f"{c}*[{p}]" for p, c in self.items())


# ---------------------------------------------------------------------------
# Orders, heights, divisors of functions
# ---------------------------------------------------------------------------

def _multiplicity(p: Poly, q: Poly) -> int:
    """Multiplicity of the monic factor q in p."""
    if p.is_zero:
        raise ZeroPolynomial("zero polynomial")
    m = 0
    while p.degree >= q.degree:
        quot, rem = divmod(p, q)
        if not rem.is_zero:
            break
        p = quot
        m += 1
    return m


def ord_at(f: RatFunc, p: Place) -> int:
    """Order of vanishing of f at the place p (negative at poles)."""
    if f.is_zero:
        raise ZeroFunction("order of the zero function is undefined")
    if p.is_infinity:
        return f.den.degree - f.num.degree
    return _multiplicity(f.num, p.poly) - _multiplicity(f.den, p.poly)


def height(f: RatFunc) -> int:
    """Height of f: its degree as a map to the projective line.

    Equals max(deg num, deg den), and also the geometric count of zeros
    (= of poles); the second route is asserted when DEBUG_CHECKS is on.
    """
    if f.is_zero:
        raise ZeroFunction("the zero function has no height")
    h = max(f.num.degree, f.den.degree)
    if DEBUG_CHECKS:
        via_divisor = sum(
            c * p.geom_degree for p, c in divisor_of(f).items() if c > 0)
        assert via_divisor == h, (via_divisor, h)
    return h


def proj_height(fs) -> int:
    """Projective height of a tuple: -sum over places of the minimal order.

    Zero entries are allowed (treated as order +infinity) as long as one
    entry is nonzero.
    """
    nonzero = [f for f in fs if not f.is_zero]
    if not nonzero:
        raise AllZero("projective height needs a nonzero entry")
    lcm_den = Poly.one()
    for f in nonzero:
        lcm_den = poly_lcm(lcm_den, f.den)
    nums = [f.num * (lcm_den // f.den) for f in nonzero]
    g = Poly.zero()
    for n in nums:
        g = poly_gcd(g, n)
        if g.degree == 0:
            break
    g_deg = g.degree if not g.is_zero else 0
    return max(n.degree for n in nums) - g_deg


def divisor_of(f: RatFunc) -> Divisor:
    """Principal divisor of a nonzero rational function (degree zero)."""
    if f.is_zero:
        raise ZeroFunction("the zero function has no divisor")
    data: dict[Place, int] = {}
    for q, m in factor_poly(f.num):
        data[Place._trusted(q)] = m
    for q, m in factor_poly(f.den):
        data[Place._trusted(q)] = data.get(Place._trusted(q), 0) - m
    inf_ord = f.den.degree - f.num.degree
    if inf_ord:
        data[Place.infinity()] = inf_ord
    div = Divisor(data)
    assert div.degree() == 0
    return div


# ---------------------------------------------------------------------------
# The two-pole differential form and the derivation it defines
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OmegaForm:
    """A differential form dt/q(t) with exactly two simple geometric poles.

    The polar places (total geometric degree 2) must lie inside the place
    set it was chosen for; q is the product of the finite polar places, so
    a polar pair (a, inf) gives q = t - a.  Both poles at infinity would
    mean q = 1 and a double pole there, which is rejected.
    """

    polar_places: tuple[Place, ...]
    denominator: Poly

    def __post_init__(self):
        total = sum(p.geom_degree for p in self.polar_places)
        if total != 2:
            raise ValueError("polar places must have total geometric degree 2")
        if all(p.is_infinity for p in self.polar_places):
            raise ValueError("a double pole at infinity is not simple")

    def __str__(self) -> str:
        return f"dt/({render_poly(self.denominator)})"


def choose_omega(places) -> OmegaForm:
    """Deterministically pick a two-simple-pole form with poles inside S.

    Candidates are ranked by (degree of the denominator, polar places in
    the canonical place order), so a (finite, infinity) pair with a
    degree-one denominator wins over a pair of finite places.
    """
    place_list = sorted(set(places), key=lambda p: p.sort_key())
    finite1 = [p for p in place_list if not p.is_infinity and p.geom_degree == 1]
    finite2 = [p for p in place_list if not p.is_infinity and p.geom_degree == 2]
    has_inf = any(p.is_infinity for p in place_list)

    candidates: list[tuple[tuple, Poly, tuple[Place, ...]]] = []
    if has_inf:
        for p in finite1:
            polar = (p, Place.infinity())
            candidates.append(
                ((p.poly.degree, tuple(q.sort_key() for q in polar)), p.poly, polar))
    for p, q in itertools.combinations(finite1, 2):
        polar = (p, q)
        candidates.append(
            ((2, tuple(r.sort_key() for r in polar)), p.poly * q.poly, polar))
    for p in finite2:
        polar = (p,)
        candidates.append(((2, (p.sort_key(),)), p.poly, polar))

    if not candidates:
        raise STooSmall(
            "need total geometric degree >= 2 with a representable polar pair")
    key, den, polar = min(candidates, key=lambda c: c[0])
    return OmegaForm(polar, den.monic())


def deriv_omega(f: RatFunc, w: OmegaForm) -> RatFunc:
    """Derivative of f against the form: the unique f' with d(f) = f' * w."""
    return f.derivative_t() * RatFunc(w.denominator)

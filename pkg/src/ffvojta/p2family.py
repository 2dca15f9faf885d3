"""Bidegree bookkeeping and the reducible-quartic family fixture.

Forms live on P^2 x P^1 with coordinates (x0, x1, x2) and (y0, y1); a
BiForm is bihomogeneous of bidegree (a, b).  The fixture is a pencil of
reducible plane quartics (two lines plus a conic) whose covering map
ramifies, away from the boundary, over one ample component; its bad fibers
and image polynomial are computed here so sections can be audited over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bipoly import BiPoly, evaluate
from .field_core import Place, Poly, RatFunc, factor_poly, height
from .sunits import PlaceSet, SUnit, as_ratfunc, euler_char, mult_dependence
from .counting import strip_set_factors, trunc_count
from .constants import ThetaLedger


class DegenerateMap(ValueError):
    """Raised when the Jacobian determinant of a map vanishes identically."""


class SectionInsideZ(ValueError):
    """Raised when a section lands inside the divisor being pulled back."""


@dataclass(frozen=True)
class BiDegree:
    """Bidegree (a, b) in Pic(P^2 x P^1); addition is componentwise."""

    a: int
    b: int

    def __add__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a - other.a, self.b - other.b)

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)


def log_canonical_bidegree(d: int, l: int, relative: bool = False) -> BiDegree:
    """Bidegree of the log canonical class K + D for D of bidegree (d, l).

    The absolute form is (d - 3, l - 2); the relative form drops the base
    contribution and is (d - 3, l).
    """
    if relative:
        return BiDegree(d - 3, l)
    return BiDegree(d - 3, l - 2)


_VARS = ("x0", "x1", "x2", "y0", "y1")


class BiForm:
    """Bihomogeneous form in x0, x1, x2, y0, y1 over Q.

    Keys are exponent tuples (e0, e1, e2, f0, f1); every monomial must have
    the same x-degree and the same y-degree.
    """

    __slots__ = ("coeffs", "xdeg", "ydeg")

    def __init__(self, coeffs=None):
        clean: dict[tuple[int, int, int, int, int], Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for key, c in items:
                c = Fraction(c)
                if c == 0:
                    continue
                if key in clean:
                    c = clean[key] + c
                    if c == 0:
                        del clean[key]
                        continue
                clean[key] = c
        xdegs = {k[0] + k[1] + k[2] for k in clean}
        ydegs = {k[3] + k[4] for k in clean}
        if len(xdegs) > 1 or len(ydegs) > 1:
            raise ValueError("a BiForm must be bihomogeneous")
        self.coeffs = dict(clean)
        self.xdeg = xdegs.pop() if xdegs else 0
        self.ydeg = ydegs.pop() if ydegs else 0

    @staticmethod
    def zero() -> "BiForm":
        return BiForm()

    @staticmethod
    def monomial(e0=0, e1=0, e2=0, f0=0, f1=0, c=1) -> "BiForm":
        return BiForm({(e0, e1, e2, f0, f1): c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.xdeg, self.ydeg)

    def __eq__(self, other) -> bool:
        return isinstance(other, BiForm) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __neg__(self) -> "BiForm":
        return BiForm({k: -c for k, c in self.coeffs.items()})

    def __add__(self, other: "BiForm") -> "BiForm":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k, Fraction(0)) + c
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
        return BiForm(out)

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-other)

    def __mul__(self, other: "BiForm") -> "BiForm":
        out: dict[tuple, Fraction] = {}
        for k1, c1 in self.coeffs.items():
            for k2, c2 in other.coeffs.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return BiForm(out)

    def __pow__(self, n: int) -> "BiForm":
        result = BiForm.monomial()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial_x(self, k: int) -> "BiForm":
        """Partial derivative with respect to x_k (k in 0..2)."""
        out = {}
        for key, c in self.coeffs.items():
            e = key[k]
            if e > 0:
                nk = list(key)
                nk[k] = e - 1
                out[tuple(nk)] = c * e
        return BiForm(out)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, c in sorted(self.coeffs.items()):
            mono = "*".join(f"{v}^{e}" if e > 1 else v
                            for v, e in zip(_VARS, key) if e > 0)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BiForm({str(self)})"


def jacobian_ramification(g1: BiForm, g2: BiForm, g3: BiForm) -> BiForm:
    """Determinant of the 3x3 matrix of x-partials, expanded exactly.

    The three forms must have equal x-degree (exponents already applied by
    the caller); an identically zero determinant signals a degenerate map.
    """
    forms = (g1, g2, g3)
    xdegs = {g.xdeg for g in forms}
    if len(xdegs) != 1:
        raise ValueError("the three forms must share one x-degree")
    rows = [[g.partial_x(k) for k in range(3)] for g in forms]
    det = BiForm.zero()
    for (i, j, k), sign in (
        ((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
        ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1),
    ):
        term = rows[0][i] * rows[1][j] * rows[2][k]
        det = det + (term if sign > 0 else -term)
    if det.is_zero:
        raise DegenerateMap("the Jacobian determinant vanishes identically")
    return det


def section_pullback_degree(A: BiPoly, u: SUnit, v: SUnit, S: PlaceSet) -> int:
    """Geometric count of the zeros of A(u, v) outside S."""
    w = evaluate(A, as_ratfunc(u), as_ratfunc(v))
    if w.is_zero:
        raise SectionInsideZ("the section lies inside the zero locus")
    total = strip_set_factors(w.num, S).degree
    if not S.has_infinity:
        total += max(0, w.den.degree - w.num.degree)
    return total


@dataclass(frozen=True)
class RamCheckReport:
    """Outcome of the ramification degree check for one section."""

    kind: str  # below_threshold | bound_holds | relation | violation
    height: int
    threshold: Fraction
    lhs: int | None = None
    rhs: Fraction | None = None
    r: int | None = None
    s: int | None = None
    gamma: RatFunc | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "height": self.height,
               "threshold": str(self.threshold)}
        if self.lhs is not None:
            out["lhs"] = self.lhs
        if self.rhs is not None:
            out["rhs"] = str(self.rhs)
        if self.r is not None:
            out.update({"r": self.r, "s": self.s, "gamma": str(self.gamma)})
        return out


def ramification_check(A: BiPoly, u: SUnit, v: SUnit, S: PlaceSet, eps,
                   ledger: ThetaLedger) -> RamCheckReport:
    """Check that multiple zeros of A at a unit section stay below eps times
    its height, once the height clears the ledger threshold.

    Sections below the threshold short-circuit; dependent unit pairs with
    exponents within the ledger bound report the relation instead.
    """
    eps = Fraction(eps)
    U = as_ratfunc(u)
    V = as_ratfunc(v)
    w = evaluate(A, U, V)
    if w.is_zero:
        raise SectionInsideZ("the section lies inside the zero locus")
    h = max(height(U), height(V))
    threshold = ledger.theta1 * max(1, euler_char(S))
    if h < threshold:
        return RamCheckReport("below_threshold", h, threshold)
    dep = mult_dependence(u, v)
    if dep.dependent and max(abs(dep.r), abs(dep.s)) <= ledger.theta2:
        return RamCheckReport("relation", h, threshold,
                              r=dep.r, s=dep.s, gamma=dep.gamma)
    count = trunc_count(w, S)
    rhs = eps * h
    kind = "bound_holds" if count.total <= rhs else "violation"
    return RamCheckReport(kind, h, threshold, lhs=count.total, rhs=rhs)


# ---------------------------------------------------------------------------
# The reducible-quartic pencil fixture
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuarticFamily:
    """The worked pencil: two lines and a conic moving over P^1."""

    g1: BiForm          # (y0 x0)^2
    g2: BiForm          # (y0 x1)^2
    g3: BiForm          # the conic component
    full_form: BiForm   # the (4, 4) divisor form
    jacobian: BiForm
    divisor_bidegree: BiDegree
    z_bidegree: BiDegree
    z_component: BiForm  # y0^2 x2, the non-boundary ramification component
    bad_places: PlaceSet
    image_poly: BiPoly

    def to_json(self) -> dict:
        return {
            "jacobian": str(self.jacobian),
            "jacobian_components": self.jacobian_components(),
            "divisor_bidegree": self.divisor_bidegree.as_tuple(),
            "z_bidegree": self.z_bidegree.as_tuple(),
            "z_component": str(self.z_component),
            "bad_places": [str(p) for p in self.bad_places.sorted_places()],
            "image_poly": str(self.image_poly),
        }

    def jacobian_components(self) -> list[str]:
        """Factorization pattern of the Jacobian: the two boundary lines,
        the ramification component, and the leftover monomial."""
        boundary = (BiForm.monomial(e0=1, f0=1), BiForm.monomial(e1=1, f0=1))
        key, coeff = next(iter(self.jacobian.coeffs.items()))
        used = (0, 0, 0, 0, 0)
        for comp in (*boundary, self.z_component):
            ckey = next(iter(comp.coeffs))
            used = tuple(a + b for a, b in zip(used, ckey))
        leftover = tuple(a - b for a, b in zip(key, used))
        parts = [str(b) for b in boundary] + [str(self.z_component)]
        parts.append(str(BiForm({leftover: coeff})))
        return parts


def _conic_discriminant_places() -> set[Place]:
    """Places of P^1 where the conic fiber x2^2 - x1^2 - t^2 x0 x1 - x0^2
    degenerates: the determinant of its symmetric matrix vanishes."""
    # matrix [[-1, -t^2/2, 0], [-t^2/2, -1, 0], [0, 0, 1]]; det = 1 - t^4/4
    det = Poly((1,)) - Poly.monomial(4, Fraction(1, 4))
    return {Place._trusted(q) for q, _ in factor_poly(det)}


def quartic_family() -> QuarticFamily:
    """Build the quartic pencil, its ramification data and bad places."""
    y0x0 = BiForm.monomial(e0=1, f0=1)
    y0x1 = BiForm.monomial(e1=1, f0=1)
    conic = (
        BiForm.monomial(e2=2, f0=2)
        - BiForm.monomial(e1=2, f0=2)
        - BiForm.monomial(e0=1, e1=1, f1=2)
        - BiForm.monomial(e0=2, f0=2)
    )
    g1 = y0x0 ** 2
    g2 = y0x1 ** 2
    full_form = y0x0 * y0x1 * conic
    jac = jacobian_ramification(g1, g2, conic)

    bad = _conic_discriminant_places()
    # every monomial of the full form carries y0, so the fiber over
    # infinity (y0 = 0) degenerates
    if min(key[3] for key in full_form.coeffs) >= 1:
        bad.add(Place.infinity())
    bad_places = PlaceSet(frozenset(bad))

    # image of the ramification component x2 = 0 under the covering map, in
    # the unit-torus coordinates X = U/W, Y = V/W
    t4 = RatFunc(Poly.monomial(4))
    xy1 = BiPoly.x() + BiPoly.y() + BiPoly.const(1)
    image = xy1 * xy1 - BiPoly({(1, 1): t4})

    return QuarticFamily(
        g1=g1,
        g2=g2,
        g3=conic,
        full_form=full_form,
        jacobian=jac,
        divisor_bidegree=BiDegree(4, 4),
        z_bidegree=log_canonical_bidegree(4, 4),
        z_component=BiForm.monomial(e2=1, f0=2),
        bad_places=bad_places,
        image_poly=image,
    )

"""Bivariate polynomials over Q(t) and the machinery built on them.

A BiPoly is a sparse map (i, j) -> nonzero RatFunc coefficient of X^i Y^j;
its total degree is deg_X + deg_Y.  UniPoly is the univariate companion
(one of X or Y eliminated) with RatFunc coefficients, used for resultants
and root extraction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd

from .field_core import (
    OmegaForm,
    Poly,
    RatFunc,
    ZeroPolynomial,
    deriv_omega,
    factor_poly,
    poly_lcm,
)
from .sunits import SUnit, as_ratfunc, log_derivative


class ConstantPolynomial(ValueError):
    """Raised when an operation needs a nonconstant polynomial."""


class BothZero(ValueError):
    """Raised when a twist direction (r, s) = (0, 0) is supplied."""


class DegenerateDegree(ValueError):
    """Raised when a resultant is requested in a variable of degree zero."""


class PreconditionViolated(ValueError):
    """Raised when a caller-asserted identity fails; carries its name."""

    def __init__(self, identity: str):
        super().__init__(f"precondition failed: {identity}")
        self.identity = identity


# ---------------------------------------------------------------------------
# UniPoly: univariate over RatFunc coefficients
# ---------------------------------------------------------------------------

class UniPoly:
    """Univariate polynomial with RatFunc coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, RatFunc) else RatFunc.const(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    def __reduce__(self):
        return (UniPoly, (self.coeffs,))

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly()

    @staticmethod
    def const(c) -> "UniPoly":
        return UniPoly((c,))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> RatFunc:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial")
        return self.coeffs[-1]

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, k: int) -> RatFunc:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RatFunc.zero()

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [RatFunc.zero()] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return UniPoly(out)

    def scale(self, c: RatFunc) -> "UniPoly":
        return UniPoly(tuple(a * c for a in self.coeffs))

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial")
        inv = RatFunc.one() / self.lc
        return self.scale(inv)

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        d = other.degree
        if len(rem) - 1 < d:
            return UniPoly(), self
        quot = [RatFunc.zero()] * (len(rem) - d)
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i]
            if not c.is_zero:
                q = c / other.lc
                quot[i - d] = q
                for j, b in enumerate(other.coeffs):
                    rem[i - d + j] = rem[i - d + j] - q * b
        return UniPoly(quot), UniPoly(rem)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def eval(self, x: RatFunc) -> RatFunc:
        acc = RatFunc.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return " + ".join(f"({c})*Z^{i}" for i, c in enumerate(self.coeffs)
                          if not c.is_zero)


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd of univariate polynomials over the field Q(t)."""
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return UniPoly.zero()
    return a.monic()


# ---------------------------------------------------------------------------
# BiPoly
# ---------------------------------------------------------------------------

class BiPoly:
    """Sparse bivariate polynomial over Q(t); no zero coefficients stored."""

    __slots__ = ("coeffs", "deg_x", "deg_y")

    def __init__(self, coeffs=None):
        clean: dict[tuple[int, int], RatFunc] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for (i, j), c in items:
                if not isinstance(c, RatFunc):
                    c = RatFunc.const(c)
                if c.is_zero:
                    continue
                if (i, j) in clean:
                    c = clean[(i, j)] + c
                    if c.is_zero:
                        del clean[(i, j)]
                        continue
                clean[(i, j)] = c
        self.coeffs = dict(clean)
        self.deg_x = max((i for i, _ in clean), default=0)
        self.deg_y = max((j for _, j in clean), default=0)

    def __reduce__(self):
        return (BiPoly, (tuple(self.coeffs.items()),))

    @staticmethod
    def zero() -> "BiPoly":
        return BiPoly()

    @staticmethod
    def const(c) -> "BiPoly":
        return BiPoly({(0, 0): c})

    @staticmethod
    def x() -> "BiPoly":
        return BiPoly({(1, 0): 1})

    @staticmethod
    def y() -> "BiPoly":
        return BiPoly({(0, 1): 1})

    @staticmethod
    def monomial(i: int, j: int, c) -> "BiPoly":
        return BiPoly({(i, j): c})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return all(ij == (0, 0) for ij in self.coeffs)

    @property
    def total_degree(self) -> int:
        """deg_X + deg_Y, the degree convention used throughout."""
        return self.deg_x + self.deg_y

    def coeff(self, i: int, j: int) -> RatFunc:
        return self.coeffs.get((i, j), RatFunc.zero())

    def items_sorted(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other) -> bool:
        return isinstance(other, BiPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(self.items_sorted()))

    def __neg__(self) -> "BiPoly":
        return BiPoly({ij: -c for ij, c in self.coeffs.items()})

    def __add__(self, other: "BiPoly") -> "BiPoly":
        out = dict(self.coeffs)
        for ij, c in other.coeffs.items():
            s = out.get(ij, RatFunc.zero()) + c
            if s.is_zero:
                out.pop(ij, None)
            else:
                out[ij] = s
        return BiPoly(out)

    def __sub__(self, other: "BiPoly") -> "BiPoly":
        return self + (-other)

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        out: dict[tuple[int, int], RatFunc] = {}
        for (i1, j1), c1 in self.coeffs.items():
            for (i2, j2), c2 in other.coeffs.items():
                key = (i1 + i2, j1 + j2)
                v = out.get(key)
                prod = c1 * c2
                out[key] = prod if v is None else v + prod
        return BiPoly(out)

    def scale(self, c: RatFunc) -> "BiPoly":
        if not isinstance(c, RatFunc):
            c = RatFunc.const(c)
        return BiPoly({ij: v * c for ij, v in self.coeffs.items()})

    def __pow__(self, n: int) -> "BiPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = BiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def partial_x(self) -> "BiPoly":
        return BiPoly({(i - 1, j): c * i
                       for (i, j), c in self.coeffs.items() if i > 0})

    def partial_y(self) -> "BiPoly":
        return BiPoly({(i, j - 1): c * j
                       for (i, j), c in self.coeffs.items() if j > 0})

    def as_unipoly_in_y(self) -> list[UniPoly]:
        """Coefficients of Y^j, each a polynomial in X over Q(t)."""
        rows = [dict() for _ in range(self.deg_y + 1)]
        for (i, j), c in self.coeffs.items():
            rows[j][i] = c
        return [UniPoly([row.get(i, RatFunc.zero())
                         for i in range(max(row, default=-1) + 1)])
                for row in rows]

    def as_unipoly_in_x(self) -> list[UniPoly]:
        """Coefficients of X^i, each a polynomial in Y over Q(t)."""
        rows = [dict() for _ in range(self.deg_x + 1)]
        for (i, j), c in self.coeffs.items():
            rows[i][j] = c
        return [UniPoly([row.get(j, RatFunc.zero())
                         for j in range(max(row, default=-1) + 1)])
                for row in rows]

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for (i, j), c in self.items_sorted():
            mono = "".join(
                [f"X^{i}" if i > 1 else ("X" if i == 1 else ""),
                 "*" if i > 0 and j > 0 else "",
                 f"Y^{j}" if j > 1 else ("Y" if j == 1 else "")])
            if mono:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"({c})")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BiPoly({str(self)})"


def evaluate(A: BiPoly, u: RatFunc, v: RatFunc) -> RatFunc:
    """Exact value A(u, v)."""
    u_pows = [RatFunc.one()]
    v_pows = [RatFunc.one()]
    for _ in range(A.deg_x):
        u_pows.append(u_pows[-1] * u)
    for _ in range(A.deg_y):
        v_pows.append(v_pows[-1] * v)
    acc = RatFunc.zero()
    for (i, j), c in A.items_sorted():
        acc = acc + c * u_pows[i] * v_pows[j]
    return acc


def poly_height(A: BiPoly) -> int:
    """Height of A: the maximum height of its coefficients."""
    from .field_core import height

    if A.is_zero:
        raise ZeroPolynomial("the zero polynomial has no height")
    return max(height(c) for c in A.coeffs.values())


def b_polynomial(A: BiPoly, u: SUnit, v: SUnit, w: OmegaForm) -> BiPoly:
    """The companion polynomial whose value at (u, v) is the derivative.

    Coefficient (i, j) is lam * (i u'/u + j v'/v) + lam', so evaluating it
    at (u, v) reproduces the derivative of A(u, v) against the form w,
    exactly.
    """
    theta_u = log_derivative(u, w)
    theta_v = log_derivative(v, w)
    out: dict[tuple[int, int], RatFunc] = {}
    for (i, j), lam in A.coeffs.items():
        c = lam * (i * theta_u + j * theta_v) + deriv_omega(lam, w)
        if not c.is_zero:
            out[(i, j)] = c
    return BiPoly(out)


def torus_derivative(A: BiPoly, r: int, s: int) -> BiPoly:
    """Derivative of A along the torus direction (X, Y) -> (l^s X, l^-r Y).

    Coefficient (i, j) picks up the factor (s*i - r*j); the result vanishes
    identically exactly when every monomial of A lies on one (r, s)-ray.
    """
    if (r, s) == (0, 0):
        raise BothZero("the direction (r, s) must be nonzero")
    return BiPoly({(i, j): c * (s * i - r * j)
                   for (i, j), c in A.coeffs.items()})


# ---------------------------------------------------------------------------
# Resultants
# ---------------------------------------------------------------------------

def _det(matrix: list[list[UniPoly]]) -> UniPoly:
    """Determinant over the UniPoly ring by column-subset expansion."""
    n = len(matrix)
    if n == 0:
        return UniPoly.const(1)

    from functools import lru_cache as _lru

    @_lru(maxsize=None)
    def minor(row: int, cols: frozenset) -> UniPoly:
        if row == n:
            return UniPoly.const(1)
        acc = UniPoly.zero()
        sign = 1
        for c in sorted(cols):
            entry = matrix[row][c]
            if not entry.is_zero:
                term = entry * minor(row + 1, cols - {c})
                acc = acc + (term if sign > 0 else -term)
            sign = -sign
        return acc

    return minor(0, frozenset(range(n)))


def _sylvester(a: list[UniPoly], b: list[UniPoly]) -> UniPoly:
    """Resultant of two polynomials given by coefficient lists (lowest first)
    over the UniPoly coefficient ring."""
    m = len(a) - 1
    n = len(b) - 1
    size = m + n
    rows: list[list[UniPoly]] = []
    for k in range(n):
        row = [UniPoly.zero()] * size
        for i, c in enumerate(reversed(a)):
            row[k + i] = c
        rows.append(row)
    for k in range(m):
        row = [UniPoly.zero()] * size
        for i, c in enumerate(reversed(b)):
            row[k + i] = c
        rows.append(row)
    return _det(rows)


def resultant_y(A: BiPoly, B: BiPoly) -> UniPoly:
    """Resultant of A and B with respect to Y: a polynomial in X over Q(t).

    Vanishes identically exactly when A and B share a factor involving Y.
    """
    if A.deg_y == 0 or B.deg_y == 0:
        raise DegenerateDegree("both polynomials must depend on Y")
    return _sylvester(A.as_unipoly_in_y(), B.as_unipoly_in_y())


def resultant_x(A: BiPoly, B: BiPoly) -> UniPoly:
    """Resultant with respect to X: a polynomial in Y over Q(t)."""
    if A.deg_x == 0 or B.deg_x == 0:
        raise DegenerateDegree("both polynomials must depend on X")
    return _sylvester(A.as_unipoly_in_x(), B.as_unipoly_in_x())


# ---------------------------------------------------------------------------
# Bivariate gcd and repeated factors
# ---------------------------------------------------------------------------

def _content(coeffs: list[UniPoly]) -> UniPoly:
    g = UniPoly.zero()
    for c in coeffs:
        if not c.is_zero:
            g = unipoly_gcd(g, c) if not g.is_zero else c.monic()
        if not g.is_zero and g.degree == 0:
            break
    return g if not g.is_zero else UniPoly.zero()


def _primitive(coeffs: list[UniPoly]) -> list[UniPoly]:
    g = _content(coeffs)
    if g.is_zero or g.degree == 0:
        return list(coeffs)
    return [c // g for c in coeffs]


def _pseudo_rem(a: list[UniPoly], b: list[UniPoly]) -> list[UniPoly]:
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and any(not c.is_zero for c in a):
        while a and a[-1].is_zero:
            a.pop()
        if len(a) - 1 < db:
            break
        la = a[-1]
        a = [c * lb for c in a]
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = a[shift + j] - la * bj
        while a and a[-1].is_zero:
            a.pop()
        if not a:
            break
    while a and a[-1].is_zero:
        a.pop()
    return a


def _gcd_main(a: list[UniPoly], b: list[UniPoly]) -> list[UniPoly]:
    """Primitive gcd in (Q(t)[other])[main] by a primitive remainder sequence."""
    ca, cb = _content(a), _content(b)
    a = _primitive(a)
    b = _primitive(b)
    if len(a) - 1 < len(b) - 1:
        a, b = b, a
    while b and any(not c.is_zero for c in b):
        r = _pseudo_rem(a, b)
        a, b = b, _primitive(r)
    cont = unipoly_gcd(ca, cb) if not (ca.is_zero or cb.is_zero) else UniPoly.const(1)
    if cont.is_zero:
        cont = UniPoly.const(1)
    return [c * cont for c in a]


def _from_main_x(coeffs: list[UniPoly]) -> BiPoly:
    out = {}
    for i, c in enumerate(coeffs):
        for j, v in enumerate(c.coeffs):
            if not v.is_zero:
                out[(i, j)] = v
    return BiPoly(out)


def _from_main_y(coeffs: list[UniPoly]) -> BiPoly:
    out = {}
    for j, c in enumerate(coeffs):
        for i, v in enumerate(c.coeffs):
            if not v.is_zero:
                out[(i, j)] = v
    return BiPoly(out)


def bipoly_gcd(A: BiPoly, B: BiPoly) -> BiPoly:
    """gcd over Q(t) treating the larger-degree variable as main (X on ties),
    with content removal in the other variable."""
    if A.is_zero:
        return B
    if B.is_zero:
        return A
    use_x = max(A.deg_x, B.deg_x) >= max(A.deg_y, B.deg_y)
    if use_x:
        g = _gcd_main(A.as_unipoly_in_x(), B.as_unipoly_in_x())
        result = _from_main_x(g)
    else:
        g = _gcd_main(A.as_unipoly_in_y(), B.as_unipoly_in_y())
        result = _from_main_y(g)
    # normalize so some coefficient is 1
    lead = result.coeffs[max(result.coeffs)]
    return result.scale(RatFunc.one() / lead)


def has_repeated_factors(A: BiPoly) -> bool:
    """True iff A has a repeated factor over the fraction field Q(t)."""
    if A.is_constant:
        raise ConstantPolynomial("repeated factors need a nonconstant input")
    if A.deg_x > 0:
        g = bipoly_gcd(A, A.partial_x())
        if not g.is_constant:
            return True
    if A.deg_y > 0:
        g = bipoly_gcd(A, A.partial_y())
        if not g.is_constant:
            return True
    return False


# ---------------------------------------------------------------------------
# Rational roots of a UniPoly
# ---------------------------------------------------------------------------

ROOT_SEARCH_DEGREE_CAP = 12


def _monic_divisors(p: Poly) -> list[Poly]:
    """All monic divisors of p in Q[t] (products of prime-power factors)."""
    divs = [Poly.one()]
    for q, m in factor_poly(p):
        powers = [q ** k for k in range(m + 1)]
        divs = [d * pw for d in divs for pw in powers]
    return divs


def rational_roots(F: UniPoly) -> tuple[list[RatFunc], bool]:
    """All roots of F lying in Q(t), with multiplicity.

    Clears denominators to Q[t][Z] and runs the rational-root method on the
    extreme coefficients: a root p/q in lowest terms must have its monic
    part dividing the trailing (resp. leading) coefficient; the constant is
    pinned by specializing t.  The flag is True exactly when the roots
    found account for the full degree.  Extreme coefficients of t-degree
    above the search cap make the result incomplete, never wrong.
    """
    if F.is_zero:
        raise ZeroPolynomial("the zero polynomial has every root")
    roots: list[RatFunc] = []
    # strip zero roots
    k = 0
    while k <= F.degree and F.coeff(k).is_zero:
        k += 1
    if k:
        roots.extend([RatFunc.zero()] * k)
        F = UniPoly(F.coeffs[k:])
    if F.degree == 0:
        return roots, True
    # clear denominators to Poly coefficients
    lcm_den = Poly.one()
    for c in F.coeffs:
        lcm_den = poly_lcm(lcm_den, c.den)
    polys = [(c * RatFunc(lcm_den)).num for c in F.coeffs]
    a0, ad = polys[0], polys[-1]
    if a0.degree > ROOT_SEARCH_DEGREE_CAP or ad.degree > ROOT_SEARCH_DEGREE_CAP:
        return roots, False
    divisors0 = _monic_divisors(a0)
    divisorsd = _monic_divisors(ad)
    # specialization point where leading/trailing coefficients survive
    tau = None
    for cand in range(1, 1000):
        if ad.eval(cand) != 0 and a0.eval(cand) != 0:
            tau = Fraction(cand)
            break
    assert tau is not None
    spec = Poly([p.eval(tau) for p in polys])
    spec_roots = {Fraction(-q.coeffs[0])
                  for q, _ in factor_poly(spec) if q.degree == 1}
    candidates: set[RatFunc] = set()
    for p_hat in divisors0:
        pv = p_hat.eval(tau)
        for q_hat in divisorsd:
            qv = q_hat.eval(tau)
            for rho in spec_roots:
                c = rho * qv / pv
                if c != 0:
                    candidates.add(RatFunc(p_hat.scale(c), q_hat))
    G = F
    for alpha in sorted(candidates, key=lambda r: (r.num.coeffs, r.den.coeffs)):
        lin = UniPoly((-alpha, RatFunc.one()))
        while G.degree >= 1:
            q, rem = divmod(G, lin)
            if not rem.is_zero:
                break
            G = q
            roots.append(alpha)
    return roots, G.degree == 0


# ---------------------------------------------------------------------------
# Dependence transfer along a common zero of A and its companion
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DependenceOutcome:
    """Result of transferring a quotient relation to the units themselves.

    kind is "constant_quotient" (with `which` naming the constant side) or
    "gamma"; in the latter case `gamma` satisfies u^r v^s = gamma exactly
    and `branch` names the case of the analysis that applied:
    "singular_point", "bezout" (coprime twist), "ray" (twist vanishes, A is
    supported on one (r, s)-ray plus a constant), or "proportional"
    (nonzero constant of proportionality).
    """

    kind: str
    which: str | None = None
    gamma: RatFunc | None = None
    branch: str | None = None


def check_dependence_transfer(
    A: BiPoly,
    u: SUnit,
    v: SUnit,
    alpha: RatFunc,
    beta: RatFunc,
    r: int,
    s: int,
    mu: Fraction,
    w: OmegaForm,
) -> DependenceOutcome:
    """Given (u/alpha)^r (v/beta)^s = mu along a common zero (alpha, beta)
    of A and its derivative companion, either one quotient is constant or
    u^r v^s equals a function gamma of the coefficients alone.

    All stated preconditions are re-verified exactly and a failure names
    the identity that broke.
    """
    U = as_ratfunc(u)
    V = as_ratfunc(v)
    if (r, s) == (0, 0):
        raise PreconditionViolated("(r, s) != (0, 0)")
    if int_gcd(abs(r), abs(s)) != 1:
        raise PreconditionViolated("gcd(|r|, |s|) = 1")
    if not evaluate(A, alpha, beta).is_zero:
        raise PreconditionViolated("A(alpha, beta) = 0")
    B = b_polynomial(A, u, v, w)
    if not evaluate(B, alpha, beta).is_zero:
        raise PreconditionViolated("B(alpha, beta) = 0")
    if alpha.is_zero or beta.is_zero:
        raise PreconditionViolated("alpha, beta nonzero")
    quotient = (U / alpha) ** r * (V / beta) ** s
    if not (quotient.is_constant and quotient.constant_value() == Fraction(mu)):
        raise PreconditionViolated("(u/alpha)^r (v/beta)^s = mu")

    if (U / alpha).is_constant:
        return DependenceOutcome("constant_quotient", which="first")
    if (V / beta).is_constant:
        return DependenceOutcome("constant_quotient", which="second")

    gamma = RatFunc.const(mu) * alpha ** r * beta ** s
    if U ** r * V ** s != gamma:
        raise PreconditionViolated("u^r v^s = mu alpha^r beta^s")

    ax = evaluate(A.partial_x(), alpha, beta)
    ay = evaluate(A.partial_y(), alpha, beta)
    if ax.is_zero and ay.is_zero:
        return DependenceOutcome("gamma", gamma=gamma, branch="singular_point")

    offsets = {s * i - r * j for (i, j) in A.coeffs}
    if offsets == {0}:
        branch = "ray"
    elif len(offsets) == 1:
        branch = "proportional"
    else:
        twist = torus_derivative(A, r, s)
        if bipoly_gcd(A, twist).is_constant:
            branch = "bezout"
        else:
            raise PreconditionViolated("A irreducible")
    return DependenceOutcome("gamma", gamma=gamma, branch=branch)


# ---------------------------------------------------------------------------
# Irreducibility attestation audit
# ---------------------------------------------------------------------------

def specialization_irreducibility_audit(A: BiPoly, seed: int = 0,
                                        trials: int = 5) -> bool:
    """Probabilistic support for an irreducibility attestation.

    Specializes t at `trials` rational points and factors the resulting
    bivariate polynomial over Q; one specialization that stays irreducible
    with the full bidegree certifies irreducibility over Q(t).  Returns
    False when every specialization splits (the attestation is suspect).
    """
    import random
    import sympy

    if A.is_constant:
        raise ConstantPolynomial("attestation needs a nonconstant polynomial")
    rng = random.Random(f"irred-audit:{seed}")
    X, Y = sympy.symbols("X Y")
    for _ in range(trials):
        tau = Fraction(rng.randint(2, 50), rng.randint(1, 7))
        try:
            expr = sympy.Integer(0)
            for (i, j), c in A.coeffs.items():
                expr += sympy.Rational(str(c.eval(tau))) * X ** i * Y ** j
        except ZeroDivisionError:
            continue
        poly = sympy.Poly(expr, X, Y, domain="QQ")
        if poly.degree(X) != A.deg_x or poly.degree(Y) != A.deg_y:
            continue
        _, factors = poly.factor_list()
        if len(factors) == 1 and factors[0][1] == 1:
            return True
    return False

"""Batch verification of the height/relation/zero-count trichotomy.

Every generated unit pair must land in one of three buckets: height below
the ledger threshold, a short multiplicative relation, or a truncated zero
count within epsilon times the height.  A pair in none of them is a
VIOLATION and fails the run.  Outcomes are computed per index from the
seed alone, so any worker partition yields byte-identical reports.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bipoly import (
    BiPoly,
    DegenerateDegree,
    UniPoly,
    b_polynomial,
    bipoly_gcd,
    evaluate,
    poly_height,
    rational_roots,
    resultant_x,
    resultant_y,
    specialization_irreducibility_audit,
    torus_derivative,
)
from .constants import ThetaLedger, theta_ledger
from .counting import strip_set_factors, trunc_count
from .field_core import (
    RatFunc,
    choose_omega,
    divisor_of,
    factor_poly,
    height,
    ord_at,
    Place,
)
from .parser import parse_bipoly, parse_place, render_ratfunc_expr
from .sunits import (
    PlaceSet,
    SUnit,
    _unit_at_index,
    as_ratfunc,
    enlarge_for_coefficients,
    euler_char,
    mult_dependence,
)

REPORT_SCHEMA = "ffvojta-report/1"

# polynomials exercised by the shipped verification suite
VERIFY_FIXTURES = {
    "linear": "X+Y+1",
    "hyperbola": "X*Y-t",
    "cubic": "X^2*Y+X*Y^2-t*(X+Y)+1",
}


class NotSplit(ValueError):
    """Raised when an audit needs resultant roots outside Q(t)."""


class NotIrreducibleAttested(ValueError):
    """Raised when an audit is requested for an unattested factor."""


@dataclass(frozen=True)
class RunConfig:
    """Serializable description of one verification run."""

    poly: str
    places: tuple[str, ...]
    epsilon: str = "1/2"
    count: int = 100
    max_exponent: int = 10
    seed: int = 0
    mode: str = "verify"
    factors: tuple[tuple[str, bool], ...] = ()
    out: str | None = None

    def factor_list(self) -> tuple[tuple[str, bool], ...]:
        if self.factors:
            return self.factors
        return ((self.poly, True),)

    def to_json(self) -> dict:
        return {
            "poly": self.poly,
            "factors": [{"expr": e, "attested_irreducible": a}
                        for e, a in self.factor_list()],
            "places": list(self.places),
            "epsilon": self.epsilon,
            "count": self.count,
            "max_exponent": self.max_exponent,
            "seed": self.seed,
            "mode": self.mode,
        }


@dataclass
class _Context:
    """Parsed form of a RunConfig, built once per process."""

    A: BiPoly
    factors: list[BiPoly]
    S: PlaceSet
    eps: Fraction
    ledger: ThetaLedger
    cfg: RunConfig
    chi_term: int = field(init=False)

    def __post_init__(self):
        self.chi_term = max(1, euler_char(self.S))


def build_context(cfg: RunConfig) -> _Context:
    if cfg.count < 0:
        raise ValueError("count must be nonnegative")
    A = parse_bipoly(cfg.poly)
    factors = [parse_bipoly(expr) for expr, _ in cfg.factor_list()]
    product = BiPoly.const(1)
    for f in factors:
        product = product * f
    if product != A:
        raise ValueError("the factor list does not multiply back to the polynomial")
    S = PlaceSet(frozenset(parse_place(p) for p in cfg.places))
    eps = Fraction(cfg.epsilon)
    shapes = [(f.deg_x, f.deg_y, poly_height(f)) for f in factors]
    ledger = theta_ledger(shapes, eps)
    return _Context(A=A, factors=factors, S=S, eps=eps, ledger=ledger, cfg=cfg)


def pair_for_index(ctx: _Context, index: int) -> tuple[SUnit, SUnit]:
    # units 2i and 2i+1 of the seeded stream form pair i
    base = 2 * index
    u = _unit_at_index(ctx.S, ctx.cfg.max_exponent, ctx.cfg.seed, base)
    v = _unit_at_index(ctx.S, ctx.cfg.max_exponent, ctx.cfg.seed, base + 1)
    return u, v


def gamma_candidate_membership(A: BiPoly, r: int, s: int,
                               gamma: RatFunc) -> dict:
    """Informational check that gamma sits in the finite candidate set cut
    out by A and its torus derivative along (r, s).

    The candidates are the values c * alpha^r beta^s at rational common
    zeros (alpha, beta) with alpha beta != 0; membership means gamma is a
    constant multiple of one of them.  Only decidable when the resultant
    roots all lie in the field ("checked" reports this).
    """
    twist = torus_derivative(A, r, s)
    if twist.is_zero:
        # every monomial of A sits on the (r, s)-ray: gamma is pinned by
        # the coefficients alone
        return {"checked": True, "member": True, "candidates": 0}
    offsets = {s * i - r * j for (i, j) in A.coeffs}
    if len(offsets) == 1:
        return {"checked": True, "member": True, "candidates": 0}
    try:
        F = _resultant_in_y(A, twist)
        G = _resultant_in_x(A, twist)
    except DegenerateDegree:
        return {"checked": False, "member": None, "candidates": 0}
    if F.is_zero or G.is_zero:
        return {"checked": False, "member": None, "candidates": 0}
    roots_f, complete_f = rational_roots(F)
    roots_g, complete_g = rational_roots(G)
    member = False
    count = 0
    for alpha in set(roots_f):
        for beta in set(roots_g):
            if alpha.is_zero or beta.is_zero:
                continue
            if not evaluate(A, alpha, beta).is_zero:
                continue
            if not evaluate(twist, alpha, beta).is_zero:
                continue
            count += 1
            if (gamma / (alpha ** r * beta ** s)).is_constant:
                member = True
    return {"checked": complete_f and complete_g, "member": member,
            "candidates": count}


def pair_outcome(ctx: _Context, index: int) -> dict:
    """Classify one generated pair; returns a JSON-ready outcome."""
    u, v = pair_for_index(ctx, index)
    U, V = as_ratfunc(u), as_ratfunc(v)
    out: dict = {"pair_index": index,
                 "u": render_ratfunc_expr(U),
                 "v": render_ratfunc_expr(V)}
    value = evaluate(ctx.A, U, V)
    if value.is_zero:
        out["kind"] = "degenerate_on_z"
        return out
    h = max(height(U), height(V))
    out["height"] = h
    if h < ctx.ledger.theta1 * ctx.chi_term:
        out["kind"] = "below_threshold"
        return out
    dep = mult_dependence(u, v)
    if dep.dependent and max(abs(dep.r), abs(dep.s)) <= ctx.ledger.theta2:
        out["kind"] = "relation"
        out["r"] = dep.r
        out["s"] = dep.s
        out["gamma"] = render_ratfunc_expr(dep.gamma)
        out["gamma_candidates"] = gamma_candidate_membership(
            ctx.A, dep.r, dep.s, dep.gamma)
        return out
    lhs = trunc_count(value, ctx.S).total
    rhs = ctx.eps * h
    out["lhs"] = lhs
    out["rhs"] = str(rhs)
    out["kind"] = "bound_holds" if lhs <= rhs else "violation"
    return out


_WORKER_CTX: _Context | None = None


def _init_worker(cfg: RunConfig) -> None:
    global _WORKER_CTX
    _WORKER_CTX = build_context(cfg)


def _worker_pair(index: int) -> dict:
    return pair_outcome(_WORKER_CTX, index)


def verify_trichotomy(cfg: RunConfig, workers: int = 1) -> list[dict]:
    """Run the trichotomy over cfg.count seeded pairs.

    With workers > 1 the pairs are distributed over a process pool; the
    outcome list is ordered by pair index either way.
    """
    if workers <= 1:
        ctx = build_context(cfg)
        return [pair_outcome(ctx, i) for i in range(cfg.count)]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                             initargs=(cfg,)) as pool:
        outcomes = list(pool.map(_worker_pair, range(cfg.count),
                                 chunksize=max(1, cfg.count // (4 * workers))))
    outcomes.sort(key=lambda o: o["pair_index"])
    return outcomes


OUTCOME_KINDS = ("below_threshold", "relation", "bound_holds",
                 "degenerate_on_z", "violation")


def build_report(cfg: RunConfig, outcomes: list[dict]) -> dict:
    counted = [o for o in outcomes if o["kind"] != "degenerate_on_z"]
    ledger = build_context(cfg).ledger
    summary = {"pairs": len(outcomes), "counted": len(counted)}
    for kind in OUTCOME_KINDS:
        summary[kind] = sum(1 for o in outcomes if o["kind"] == kind)
    return {
        "schema": REPORT_SCHEMA,
        "config": cfg.to_json(),
        "constants": ledger.to_json(),
        "summary": summary,
        "outcomes": outcomes,
    }


def emit_report(report: dict, path: str) -> None:
    """Write a report as canonical JSON: stable field order, exact rationals
    rendered as `p/q` strings."""
    data = json.dumps(report, indent=2) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(data)


def load_report(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Stepwise audit of one pair (split case)
# ---------------------------------------------------------------------------

def _resultant_in_y(A: BiPoly, B: BiPoly) -> UniPoly:
    if B.deg_y == 0:
        # B is already a polynomial in X alone; the resultant degenerates
        # to B raised to the Y-degree of A.
        b = B.as_unipoly_in_y()[0]
        out = UniPoly.const(1)
        for _ in range(A.deg_y):
            out = out * b
        return out
    return resultant_y(A, B)


def _resultant_in_x(A: BiPoly, B: BiPoly) -> UniPoly:
    if B.deg_x == 0:
        b = B.as_unipoly_in_x()[0]
        out = UniPoly.const(1)
        for _ in range(A.deg_x):
            out = out * b
        return out
    return resultant_x(A, B)


def _unipoly_height(F: UniPoly) -> int:
    return max(height(c) for c in F.coeffs if not c.is_zero)


def _support_places(f: RatFunc) -> set:
    if f.is_zero or f.is_constant:
        return set()
    return divisor_of(f).support()


def audit_steps(cfg: RunConfig, u: SUnit, v: SUnit) -> dict:
    """Audit the resultant construction for a single attested-irreducible
    polynomial at one unit pair, in the split case.

    Builds the derivative companion B and the two resultants, checks the
    degree and height bounds, extracts rational roots, and when both
    resultants split over Q(t) verifies the pointwise common-zero
    inequality outside the assembled place set V.  Reports are labeled
    split-case only.
    """
    exprs = cfg.factor_list()
    if len(exprs) != 1:
        raise ValueError("the stepwise audit takes a single irreducible factor")
    expr, attested = exprs[0]
    if not attested:
        raise NotIrreducibleAttested(f"factor {expr!r} is not attested irreducible")
    A = parse_bipoly(expr)
    if A.deg_x == 0 or A.deg_y == 0:
        raise ValueError("the audit needs a polynomial in both variables")
    if not specialization_irreducibility_audit(A, seed=cfg.seed):
        raise NotIrreducibleAttested(
            f"specialization audit could not support irreducibility of {expr!r}")

    S = PlaceSet(frozenset(parse_place(p) for p in cfg.places))
    report: dict = {"mode": "audit", "split_case_only": True,
                    "poly": expr,
                    "u": render_ratfunc_expr(as_ratfunc(u)),
                    "v": render_ratfunc_expr(as_ratfunc(v))}

    # enlarge S so the coefficients of A are units, then pick the form
    S_a = enlarge_for_coefficients(S, list(A.coeffs.values()))
    w = choose_omega(S_a.places)
    B = b_polynomial(A, u, v, w)
    S_prime = enlarge_for_coefficients(S_a, [c for c in B.coeffs.values()])
    chi_term = max(1, euler_char(S))
    s2_value = S_prime.geometric_size
    report["s_prime"] = {
        "base_size": S.geometric_size,
        "coefficient_enlarged_size": S_a.geometric_size,
        "size": s2_value,
        # reported, never asserted: the stated cardinality bound for the
        # enlarged set does not visibly include the base size
        "stated_bound": chi_term,
        "stated_bound_holds": s2_value <= chi_term,
    }

    # Step 1: either A and B are coprime or the pair already satisfies a
    # short relation read off two monomials.
    step1: dict = {}
    proportional = False
    if B.is_zero:
        proportional = True
    elif all(ij in A.coeffs for ij in B.coeffs):
        base_ij = next(iter(sorted(A.coeffs)))
        a_ratio = B.coeff(*base_ij) / A.coeff(*base_ij)
        proportional = all(B.coeff(i, j) == A.coeff(i, j) * a_ratio
                           for (i, j) in A.coeffs)
    if proportional:
        monos = sorted(A.coeffs)
        (i, j), (hh, kk) = monos[0], monos[1]
        r, s = i - hh, j - kk
        if r < 0 or (r == 0 and s < 0):
            r, s, (i, j), (hh, kk) = -r, -s, (hh, kk), (i, j)
        gamma = as_ratfunc(u) ** r * as_ratfunc(v) ** s
        lam_ratio = A.coeff(hh, kk) / A.coeff(i, j)
        mu = gamma / lam_ratio
        step1 = {
            "coprime": False,
            "relation": {"r": r, "s": s,
                         "gamma": render_ratfunc_expr(gamma),
                         "mu_constant": mu.is_constant},
        }
        report["step1"] = step1
        return report
    g = bipoly_gcd(A, B)
    step1 = {"coprime": g.is_constant}
    report["step1"] = step1
    if not g.is_constant:
        raise NotIrreducibleAttested(
            "A shares a nonconstant factor with its companion but is not "
            "proportional to it; the attestation is suspect")

    # Step 2: resultants with their degree and height bounds.
    F = _resultant_in_y(A, B)
    G = _resultant_in_x(A, B)
    c4 = 2 * A.deg_x * A.deg_y
    h_a = poly_height(A)
    chi_sp = max(1, euler_char(S_prime))
    bound_f = 2 * A.deg_y * (3 * chi_sp + h_a)
    bound_g = 2 * A.deg_x * (3 * chi_sp + h_a)
    hf = _unipoly_height(F) if not F.is_zero else 0
    hg = _unipoly_height(G) if not G.is_zero else 0
    report["step2"] = {
        "deg_f": F.degree, "deg_g": G.degree, "deg_bound": c4,
        "h_f": hf, "h_g": hg,
        "h_bound_f": bound_f, "h_bound_g": bound_g,
        "holds": (F.degree <= c4 and G.degree <= c4
                  and hf <= bound_f and hg <= bound_g),
    }

    # Step 3: the split case requires every root to lie in Q(t).
    roots_f, complete_f = rational_roots(F)
    roots_g, complete_g = rational_roots(G)
    report["step3"] = {
        "roots_f": [render_ratfunc_expr(r) for r in roots_f],
        "roots_g": [render_ratfunc_expr(r) for r in roots_g],
        "complete_f": complete_f, "complete_g": complete_g,
    }
    if not (complete_f and complete_g):
        report["outcome"] = "not_split"
        return report

    # Step 4: assemble the common-zero set and the place set V, then check
    # the pointwise inequality at every zero of A(u, v) outside V.
    zset = []
    for alpha in set(roots_f):
        for beta in set(roots_g):
            if alpha.is_zero or beta.is_zero:
                continue
            if evaluate(A, alpha, beta).is_zero and \
                    evaluate(B, alpha, beta).is_zero:
                zset.append((alpha, beta))
    places = set(S_prime.places)
    for coeffs in (F.coeffs, G.coeffs):
        for c in (coeffs[0], coeffs[-1]):
            places |= _support_places(c)
    for alpha in set(roots_f):
        for beta in set(roots_g):
            for val in (evaluate(A, alpha, beta), evaluate(B, alpha, beta)):
                if not val.is_zero:
                    places |= _support_places(val)
    V = PlaceSet(frozenset(places))

    U_f = as_ratfunc(u)
    V_f = as_ratfunc(v)
    a_val = evaluate(A, U_f, V_f)
    b_val = evaluate(B, U_f, V_f)
    checks = []
    holds = True
    if not a_val.is_zero and not b_val.is_zero:
        outside = strip_set_factors(a_val.num, V)
        zero_places = [Place._trusted(q) for q, _ in factor_poly(outside)]
        if not V.has_infinity and a_val.den.degree > a_val.num.degree:
            zero_places.append(Place.infinity())
        for p in zero_places:
            lhs = min(ord_at(a_val, p), ord_at(b_val, p))
            rhs = sum(
                min(ord_at(U_f - alpha, p) if U_f != alpha else 10 ** 9,
                    ord_at(V_f - beta, p) if V_f != beta else 10 ** 9)
                for alpha, beta in zset)
            ok = lhs <= rhs
            holds = holds and ok
            checks.append({"place": str(p), "lhs": lhs, "rhs": rhs, "holds": ok})
    report["step4"] = {
        "v_geometric_size": V.geometric_size,
        "z_pairs": len(zset),
        "checks": checks,
        "holds": holds,
    }
    report["outcome"] = "split_audit_complete"
    return report

"""ffvojta: exact arithmetic over Q(t) with a degeneracy-bound harness.

The package provides places, divisors and heights on the projective line,
S-unit generation and dependence testing, bivariate resultant machinery,
truncated zero counting with its explicit constant ledgers, the unit-sum
height bound, a projective-family fixture, and a CLI that verifies the
height/relation/zero-count trichotomy over seeded batches.
"""

from .field_core import (
    Divisor,
    OmegaForm,
    Place,
    Poly,
    RatFunc,
    choose_omega,
    deriv_omega,
    divisor_of,
    height,
    ord_at,
    proj_height,
    yun_squarefree,
)
from .sunits import (
    DependenceResult,
    PlaceSet,
    SUnit,
    as_ratfunc,
    enlarge_for_coefficients,
    euler_char,
    generate,
    log_derivative,
    mult_dependence,
    sunit_from_ratfunc,
)
from .bipoly import (
    BiPoly,
    UniPoly,
    b_polynomial,
    check_dependence_transfer,
    evaluate,
    has_repeated_factors,
    poly_height,
    rational_roots,
    resultant_x,
    resultant_y,
    torus_derivative,
)
from .counting import (
    BoundCheck,
    CountReport,
    check_cz_gcd_bound,
    check_zannier_bound,
    gcd_units_sum,
    min_ord_sum,
    trunc_count,
)
from .constants import (
    IrredLedger,
    PairLedger,
    ThetaLedger,
    irred_ledger,
    pair_ledger,
    section_height_constant,
    theta_ledger,
)
from .unitsum import VanishingSum, bm_weight, check_bm, m_at
from .p2family import (
    BiDegree,
    BiForm,
    jacobian_ramification,
    log_canonical_bidegree,
    ramification_check,
    quartic_family,
    section_pullback_degree,
)
from .parser import parse_bipoly, parse_place, parse_ratfunc
from .verify import RunConfig, audit_steps, emit_report, verify_trichotomy

__version__ = "0.1.0"

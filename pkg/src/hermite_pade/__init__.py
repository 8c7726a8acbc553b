"""Exact Hermite-Pade approximations to exponential functions.

Sparse integer polynomials, exact minors and determinants, the classical
(tame) and twin (wild) approximation systems, small-solution bounds and
remainder-order certificates.
"""

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    CertificateError,
    CoefficientNonZero,
    DivisibilityFalsified,
    IdentityFalsified,
    NonConstantQuotient,
    NotDivisible,
    PreconditionError,
    RankDeficient,
)
from .gcd import format_factored, normalize_ray, poly_gcd
from .linalg import (
    ColumnSelection,
    Matrix,
    all_maximal_minors,
    block_minor_expansion,
    det,
    gram_det,
    integer_kernel_basis,
    maximal_minor,
    rank_over_fractions,
)
from .poly import (
    IntegerPoint,
    Poly,
    RatPoly,
    parse_poly,
    parse_ratpoly,
    poly_derivative,
    poly_eval,
    poly_exact_div,
    poly_mul,
)
from .series import TruncSeries, exp_product, order_at_zero
from .siegel import (
    bombieri_vaaler_bound,
    fg_bound,
    find_small_kernel,
    mahler_bound,
    siegel_pade_solve,
)
from .tame import (
    TameProblem,
    F_m_product,
    build_U,
    certify_hminorexp,
    certify_minor_closed_form,
    sigma_coefficients,
    tame_minors,
    tame_solve,
)
from .vandermonde import (
    BlockSpec,
    PolySequence,
    build_caseA,
    build_caseB,
    certify_caseA_factor,
    certify_caseB_factor,
    constant_F,
    kratt_closed_form,
)
from .wild import (
    WildProblem,
    build_V,
    certify_claimed_factor,
    certify_theorem4,
    claimed_factor,
    common_factor_T,
    minor_gcd_report,
    rank_check,
    twin_solve,
)

IntPoly = Poly

__version__ = "0.1.0"

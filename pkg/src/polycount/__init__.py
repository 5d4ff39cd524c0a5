"""Exact counting of irreducible polynomials with prescribed trace and
restricted norm over finite fields.

Everything is integer-exact: field arithmetic on coordinate vectors,
character sums in rings of roots of unity, and closed-form tables checked
against a brute-force oracle.
"""

from .catalog import (
    CatalogValue,
    Index2Class,
    classify,
    coset2,
    p2_closed_detail,
    p2_closed_pm,
    p2_context,
    p2_general_pm,
)
from .charsums import (
    ConnectReport,
    MultChar,
    char_connect_check,
    dh_consistency_check,
    gauss_sum,
    gauss_sum_folded,
    gauss_sum_lifted,
    jacobi_brute,
    monomial_closed_char2,
    monomial_closed_semiprimitive,
    monomial_sum,
)
from .counting import (
    CountSpec,
    TParams,
    applicable_tables,
    derive_params,
    m_t_closed,
    m_t_general,
    m_t_jacobi,
    m_t_lifted,
    m_t_monomial,
    n_t,
    n_t_special,
    n_t_table,
    p_m,
    p_m_prime_closed,
)
from .cyclotomic import (
    OMEGA_7,
    OMEGA_15,
    OMEGA_21,
    OMEGA_23,
    CycInt,
    EisensteinInt,
    GaussianInt,
    QuadPow,
    quadratic_gauss_sum,
    sqrt_minus,
    zeta,
)
from .fields import (
    DEFAULT_ENUM_CAP,
    FieldCtx,
    FieldElement,
    TowerCtx,
    build_field,
    build_tower,
    field_poly_is_irreducible,
    min_poly,
    poly_is_irreducible,
)
from .intmath import (
    divisors,
    factorize,
    is_prime,
    legendre,
    mobius,
    multiplicative_order,
    necklace_count,
    primitive_root,
)
from .jacobi import (
    CubicParams,
    QuarticParams,
    cubic_params,
    jacobi_closed,
    jacobi_closed_cyc,
    quartic_params,
)
from .oracle import (
    DEFAULT_LISTING_CAP,
    DEFAULT_ORACLE_CAP,
    BruteResult,
    brute_n_t,
    brute_p_m,
    brute_scan,
    brute_t_t,
    list_polys,
)

__version__ = "0.1.0"

"""Exact polynomial and rational-function arithmetic."""

from .polynomial import (
    NEG_INF,
    Polynomial,
    as_rational,
    poly_gcd,
    poly_invmod,
    poly_lcm,
    squarefree_decomposition,
    squarefree_part,
)
from .rational import (
    INF_ORDER,
    ComplexRational,
    LaurentExpansion,
    RationalFunction,
    decimal_abs,
    laurent_at_infinity,
    tail_coefficients,
)
from .roots import (
    RootDisk,
    RootLocation,
    isolate_real_roots,
    locate_roots,
    refine_root,
    sign_changes,
    sturm_root_count,
)

__all__ = [
    "NEG_INF",
    "INF_ORDER",
    "Polynomial",
    "RationalFunction",
    "LaurentExpansion",
    "ComplexRational",
    "RootDisk",
    "RootLocation",
    "as_rational",
    "decimal_abs",
    "isolate_real_roots",
    "laurent_at_infinity",
    "locate_roots",
    "refine_root",
    "poly_gcd",
    "poly_invmod",
    "poly_lcm",
    "sign_changes",
    "squarefree_decomposition",
    "squarefree_part",
    "sturm_root_count",
    "tail_coefficients",
]

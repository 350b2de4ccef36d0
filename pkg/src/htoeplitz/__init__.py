"""Exact Toeplitz-operator calculus on the harmonic Bergman space of the disk."""

from .derive import (
    ALL_LEMMA_TAGS,
    DerivationReport,
    FunctionalEquation,
    LemmaReport,
    TelescopeError,
    antidifference,
    commute_with_Tz_solve,
    constraint_at_offset,
    reproduce_lemma,
    run_pipeline,
    solve_telescoping,
)
from .exactalg import (
    C,
    Coeff,
    GaussianRational,
    UnboundIndeterminateError,
    abar,
    aname,
    cname,
)
from .mellin import MellinInversionError, inverse_mellin, mellin
from .oracle import (
    QuadratureConfig,
    QuadratureDivergenceError,
    apply_numeric,
    compare,
    mellin_numeric,
)
from .parser import (
    ParseError,
    parse_basis_vector,
    parse_radial_expr,
    parse_rational_expr,
    parse_symbol_expr,
)
from .radial import RadialFunction
from .ratfun import PartialFractions, Poly, PoleError, RationalFn
from .toeplitz import (
    ANALYTIC,
    CONJUGATE,
    BasisVector,
    CommutationReport,
    HarmonicVector,
    Symbol,
    apply_quasi,
    apply_symbol,
    commutator_residual,
    u_symbol,
    verify_commute,
    z_vec,
    zbar_vec,
)

__all__ = [
    "ALL_LEMMA_TAGS",
    "ANALYTIC",
    "BasisVector",
    "C",
    "CONJUGATE",
    "Coeff",
    "CommutationReport",
    "DerivationReport",
    "FunctionalEquation",
    "GaussianRational",
    "HarmonicVector",
    "LemmaReport",
    "MellinInversionError",
    "ParseError",
    "PartialFractions",
    "Poly",
    "PoleError",
    "QuadratureConfig",
    "QuadratureDivergenceError",
    "RadialFunction",
    "RationalFn",
    "Symbol",
    "TelescopeError",
    "UnboundIndeterminateError",
    "abar",
    "aname",
    "antidifference",
    "apply_numeric",
    "apply_quasi",
    "apply_symbol",
    "cname",
    "commutator_residual",
    "commute_with_Tz_solve",
    "compare",
    "constraint_at_offset",
    "inverse_mellin",
    "mellin",
    "mellin_numeric",
    "parse_basis_vector",
    "parse_radial_expr",
    "parse_rational_expr",
    "parse_symbol_expr",
    "reproduce_lemma",
    "run_pipeline",
    "solve_telescoping",
    "u_symbol",
    "verify_commute",
    "z_vec",
    "zbar_vec",
]

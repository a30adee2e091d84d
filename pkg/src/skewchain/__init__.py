"""Exact-arithmetic chain-level algebra for skew group algebras.

The package builds the bar and Koszul-type bimodule resolutions of a skew
group algebra S(V) ⋊ G over Q or GF(p), the group-twisted
Alexander-Whitney / Eilenberg-Zilber comparison maps between them, and
three independent decision procedures for the PBW property of quadratic
deformations determined by parameter maps (kappa, lambda).
"""

from .fields import (
    GF,
    QQ,
    DivisionByZero,
    Field,
    FieldMismatch,
    NonPrimeModulus,
    field_from_descriptor,
)
from .groups import (
    FiniteGroup,
    GroupMismatch,
    NoIdentity,
    NotAssociative,
    NotLatinSquare,
    cyclic_group,
    group_from_config,
    product_of_cyclic_groups,
    reduce_identity,
    symmetric_group,
)
from .polynomials import (
    DimensionMismatch,
    LinearAction,
    linear_part,
    poly_mul,
    reduce_const,
)
from .skew import ContextMismatch, SkewAlgebra
from .complexes import (
    ChainElement,
    ChainVector,
    ShapeMismatch,
    bar_diff,
    bimodule_act,
    diff,
    expand_term,
    koszul_diff,
    twisted_diff,
)
from .chainmaps import (
    DegreeOutOfRange,
    awg,
    ezg,
    get_pi_solver,
    iota,
    iota_s,
    pi,
    pi_s,
    verify_chainmap,
)
from .cochains import Cochain, bracket, circle, coboundary, cup
from .pbw import (
    MissingParams,
    PBWParams,
    PBWReport,
    SearchSpaceTooLarge,
    check_all,
    check_cohomological,
    check_five,
    enumerate_pbw,
    oracle_pbw,
)
from .serialize import ConfigParseError, RunConfig, canonical_json

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "field_from_descriptor",
    "DivisionByZero", "FieldMismatch", "NonPrimeModulus",
    "FiniteGroup", "cyclic_group", "symmetric_group",
    "product_of_cyclic_groups", "group_from_config", "reduce_identity",
    "GroupMismatch", "NoIdentity", "NotAssociative", "NotLatinSquare",
    "LinearAction", "poly_mul", "reduce_const", "linear_part",
    "DimensionMismatch",
    "SkewAlgebra", "ContextMismatch",
    "ChainElement", "ChainVector", "ShapeMismatch", "expand_term",
    "bar_diff", "koszul_diff", "twisted_diff", "diff", "bimodule_act",
    "awg", "ezg", "iota_s", "pi_s", "iota", "pi",
    "get_pi_solver", "verify_chainmap", "DegreeOutOfRange",
    "Cochain", "coboundary", "circle", "bracket", "cup",
    "PBWParams", "PBWReport", "check_five", "check_cohomological",
    "oracle_pbw", "check_all", "enumerate_pbw",
    "MissingParams", "SearchSpaceTooLarge",
    "ConfigParseError", "RunConfig", "canonical_json",
    "__version__",
]

"""Exact symmetric geometric rank (SGR) and geometric rank (GR) of tensors.

The symmetric geometric rank of a symmetric tensor is the codimension of the
singular locus of its associated hypersurface; this package computes it
exactly over the rationals or a prime field by Groebner-basis dimension
computation, together with tensor constructors, stratum samplers and
hypergraph ingestion.
"""

from .errors import (
    ComputationTimeout,
    DimensionMismatchError,
    InvalidInputError,
    ParseError,
    SgrankError,
)
from .polyring import (
    DEFAULT_PRIME,
    GREVLEX,
    LEX,
    PolyRing,
    Polynomial,
    PrimeField,
    QQ,
    RationalField,
    format_polynomial,
    is_prime,
    parse_field,
    parse_polynomial,
)
from .groebner import (
    GBStats,
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_dimension,
    ideal_membership,
    normal_form,
    s_polynomial,
)
from .tensor import (
    GeneralTensor,
    Hypergraph,
    SymmetricTensor,
    big_cw,
    complete_homogeneous_cubic,
    hypergraph_tensor,
    identity_tensor,
    irreducible_sgr2_cubic,
    max_compressibility,
    parse_hypergraph,
    small_cw,
    sym_matrix_mult,
    tensor_from_json,
    w_state,
)
from .rank import (
    RankReport,
    gr,
    gr_details,
    matrix_rank,
    rank_report,
    sgr,
    sgr_details,
    singular_ideal,
)
from .strata import (
    ProjectiveLine,
    Tangency,
    binary_cubic_discriminant,
    line_tangency,
    linear_form,
    membership_S,
    restrict_to_line,
    sample_irreducible_sgr2,
    sample_reducible,
    sample_secant_tangential,
    sample_tangential,
)

__version__ = "0.1.0"

__all__ = [
    "ComputationTimeout",
    "DimensionMismatchError",
    "InvalidInputError",
    "ParseError",
    "SgrankError",
    "DEFAULT_PRIME",
    "GREVLEX",
    "LEX",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "QQ",
    "RationalField",
    "format_polynomial",
    "is_prime",
    "parse_field",
    "parse_polynomial",
    "GBStats",
    "GroebnerBasis",
    "Ideal",
    "buchberger",
    "ideal_dimension",
    "ideal_membership",
    "normal_form",
    "s_polynomial",
    "GeneralTensor",
    "Hypergraph",
    "SymmetricTensor",
    "big_cw",
    "complete_homogeneous_cubic",
    "hypergraph_tensor",
    "identity_tensor",
    "irreducible_sgr2_cubic",
    "max_compressibility",
    "parse_hypergraph",
    "small_cw",
    "sym_matrix_mult",
    "tensor_from_json",
    "w_state",
    "RankReport",
    "gr",
    "gr_details",
    "matrix_rank",
    "rank_report",
    "sgr",
    "sgr_details",
    "singular_ideal",
    "ProjectiveLine",
    "Tangency",
    "binary_cubic_discriminant",
    "line_tangency",
    "linear_form",
    "membership_S",
    "restrict_to_line",
    "sample_irreducible_sgr2",
    "sample_reducible",
    "sample_secant_tangential",
    "sample_tangential",
    "__version__",
]

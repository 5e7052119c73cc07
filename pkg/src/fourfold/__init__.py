"""Exact homotopy invariants of simply connected closed 4-manifolds.

Single input: the second Betti number.  Outputs: rational homotopy ranks,
loop-space homology series, stable homotopy groups, growth classification,
and a brute-force graded-algebra oracle that independently verifies every
closed-form identity.
"""

from .errors import (
    DomainError,
    FourfoldError,
    InsufficientStemsData,
    InternalInconsistency,
    LogDomain,
    NonInvertibleSeries,
    ParseError,
    ResourceLimit,
    UngradedGenerator,
    ValidationError,
)
from .oracle import (
    OracleReport,
    RelationElement,
    Word,
    canonical_relation,
    enumerate_words,
    euler_identity_check,
    ideal_degree_dim,
    koszul_leading_monomial_check,
    quotient_dims_oracle,
)
from .ranks import (
    PBW_FAIL,
    PBW_NOT_APPLICABLE,
    PBW_PASS,
    GrowthReport,
    PbwCheck,
    RankTable,
    cumulative_bound_check,
    divisibility_report,
    growth_base,
    growth_report,
    homotopy_ranks,
    lambda_coeff,
    moebius,
    pbw_identity_check,
    rank_polynomial_eval,
)
from .series import (
    GradedDims,
    TruncatedSeries,
    free_comm_series,
    pbw_series,
    quotient_series,
    series_add,
    series_exp,
    series_log,
    series_mul,
    series_pow,
    series_reciprocal,
    tensor_series,
)
from .stable import (
    FinAbGroup,
    MarkerSum,
    StemsTable,
    bundled_stems_table,
    direct_sum_power,
    integral_low_homotopy,
    load_stems_table,
    stable_homotopy_finite_pi1,
    stable_homotopy_simply_connected,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "FourfoldError",
    "FinAbGroup",
    "GradedDims",
    "GrowthReport",
    "InsufficientStemsData",
    "InternalInconsistency",
    "LogDomain",
    "MarkerSum",
    "NonInvertibleSeries",
    "OracleReport",
    "PBW_FAIL",
    "PBW_NOT_APPLICABLE",
    "PBW_PASS",
    "ParseError",
    "PbwCheck",
    "RankTable",
    "RelationElement",
    "ResourceLimit",
    "StemsTable",
    "TruncatedSeries",
    "UngradedGenerator",
    "ValidationError",
    "Word",
    "bundled_stems_table",
    "canonical_relation",
    "cumulative_bound_check",
    "direct_sum_power",
    "divisibility_report",
    "enumerate_words",
    "euler_identity_check",
    "free_comm_series",
    "growth_base",
    "growth_report",
    "homotopy_ranks",
    "ideal_degree_dim",
    "integral_low_homotopy",
    "koszul_leading_monomial_check",
    "lambda_coeff",
    "load_stems_table",
    "moebius",
    "pbw_identity_check",
    "pbw_series",
    "quotient_dims_oracle",
    "quotient_series",
    "rank_polynomial_eval",
    "series_add",
    "series_exp",
    "series_log",
    "series_mul",
    "series_pow",
    "series_reciprocal",
    "stable_homotopy_finite_pi1",
    "stable_homotopy_simply_connected",
    "tensor_series",
]

"""Picard arithmetic, line-bundle cohomology and SNC configurations on P^d and Sigma_m."""

from .config import (
    CURVE,
    EMPTY,
    POINTS,
    PROJECTIVE_STRATUM,
    VARIETY,
    DivisorDatum,
    SNCConfig,
    Stratum,
    config_from_model,
    ext_dim_on_stratum,
    load_config,
    parse_config,
    require_valid,
    resolved_points,
    restrict_along,
    restrict_to_stratum,
    stratum_info,
    validate_snc,
)
from .schema import CohomologyRow, CohomologyTable, SNCConfigModel, SNCFailure, SNCVerdict
from .variety import (
    HIRZEBRUCH,
    PROJECTIVE,
    PicClass,
    VarietyModel,
    ample,
    canonical_class,
    cohomology_dim,
    cohomology_table,
    euler_characteristic,
    genus,
    intersection_number,
    p_cohomology,
    shift,
)

__all__ = [
    "CURVE",
    "CohomologyRow",
    "CohomologyTable",
    "DivisorDatum",
    "EMPTY",
    "HIRZEBRUCH",
    "POINTS",
    "PROJECTIVE",
    "PROJECTIVE_STRATUM",
    "PicClass",
    "SNCConfig",
    "SNCConfigModel",
    "SNCFailure",
    "SNCVerdict",
    "Stratum",
    "VARIETY",
    "VarietyModel",
    "ample",
    "canonical_class",
    "cohomology_dim",
    "cohomology_table",
    "config_from_model",
    "euler_characteristic",
    "ext_dim_on_stratum",
    "genus",
    "intersection_number",
    "load_config",
    "p_cohomology",
    "parse_config",
    "require_valid",
    "resolved_points",
    "restrict_along",
    "restrict_to_stratum",
    "shift",
    "stratum_info",
    "validate_snc",
]

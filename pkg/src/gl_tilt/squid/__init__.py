"""Squid quivers of weighted projective spaces and the End(T) cross-check."""

from .builder import (
    SquidQuiver,
    SquidSpec,
    SquidVertex,
    build_pd_squid,
    build_weighted_line_squid,
    relation_families,
)
from .crosscheck import end_dim_crosscheck, summand_grid, summand_hom_dim
from .emit import FORMATS, emit, parse_quiver_json, to_dot, to_model
from .schema import CrosscheckReport, SquidCounts, SquidQuiverModel, SquidSpecModel

__all__ = [
    "CrosscheckReport",
    "FORMATS",
    "SquidCounts",
    "SquidQuiver",
    "SquidQuiverModel",
    "SquidSpec",
    "SquidSpecModel",
    "SquidVertex",
    "build_pd_squid",
    "build_weighted_line_squid",
    "emit",
    "end_dim_crosscheck",
    "parse_quiver_json",
    "relation_families",
    "summand_grid",
    "summand_hom_dim",
    "to_dot",
    "to_model",
]

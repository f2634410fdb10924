"""Tilting objects on GL orders: condition checks, catalog families, assembly."""

from .checker import assemble_tilting, auto_twist, check_conditions, global_dimension, summand_count
from .family import (
    TiltingFamily,
    default_family,
    family_for,
    parse_family,
    shift_member,
    summand_names,
    twist_globally,
)
from .schema import ExtEntry, InjectivityVerdict, SummandDescriptor, TiltingReport

__all__ = [
    "ExtEntry",
    "InjectivityVerdict",
    "SummandDescriptor",
    "TiltingFamily",
    "TiltingReport",
    "assemble_tilting",
    "auto_twist",
    "check_conditions",
    "default_family",
    "family_for",
    "global_dimension",
    "parse_family",
    "shift_member",
    "summand_count",
    "summand_names",
    "twist_globally",
]

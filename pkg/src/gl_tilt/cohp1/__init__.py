"""Coherent sheaves on the projective line in split form."""

from .abelian import (
    cokernel,
    euler_form,
    ext1_dim,
    ext_dim,
    factor_through_epi,
    factor_through_mono,
    generic_rank,
    is_isomorphism,
    kernel,
    twist_and_eta,
)
from .morphism import (
    P1Morphism,
    compose,
    direct_sum_data,
    from_coordinates,
    hom_basis,
    hom_dim,
    identity,
    multiply_by_form,
    sections_matrix,
    twist_morphism,
    zero,
)
from .sheaf import P1Sheaf, RationalPoint, Summand, point_form

__all__ = [
    "P1Morphism",
    "P1Sheaf",
    "RationalPoint",
    "Summand",
    "cokernel",
    "compose",
    "direct_sum_data",
    "euler_form",
    "ext1_dim",
    "ext_dim",
    "factor_through_epi",
    "factor_through_mono",
    "from_coordinates",
    "generic_rank",
    "hom_basis",
    "hom_dim",
    "identity",
    "is_isomorphism",
    "kernel",
    "multiply_by_form",
    "point_form",
    "sections_matrix",
    "twist_and_eta",
    "twist_morphism",
    "zero",
]

"""Quivers with relations, their representations, Hom and Ext."""

from .algebra import AlgebraPresentation, PathAlgebra, algebra_dimension, linear_relation
from .homological import ext_dim, ext_dims, global_dimension, minimal_resolution, projective_dimension
from .quiver import Arrow, Path, Quiver, Relation, enumerate_paths
from .representation import (
    Representation,
    RepMorphism,
    cokernel,
    direct_sum,
    hom_dim,
    hom_space,
    identity_morphism,
    is_isomorphic,
    kernel,
)

__all__ = [
    "AlgebraPresentation",
    "Arrow",
    "Path",
    "PathAlgebra",
    "Quiver",
    "Relation",
    "RepMorphism",
    "Representation",
    "algebra_dimension",
    "cokernel",
    "direct_sum",
    "enumerate_paths",
    "ext_dim",
    "ext_dims",
    "global_dimension",
    "hom_dim",
    "hom_space",
    "identity_morphism",
    "is_isomorphic",
    "kernel",
    "linear_relation",
    "minimal_resolution",
    "projective_dimension",
]

"""Grid categories over an abelian category with commuting functors F_i and eta_i: F_i -> id."""

from .analysis import (
    adjunction_dims,
    build_cotilting_general,
    build_cotilting_one_weight,
    canonical_sequence,
    check_cotilting,
    delta_epimorphism,
    general_summands,
    gldim_experiment,
    lift_summand,
    one_weight_summands,
    recollement_identities,
    resolving_member,
    unit_counit_analysis,
)
from .category import (
    grid_cokernel,
    grid_direct_sum,
    grid_hom,
    grid_hom_dim,
    grid_identity,
    grid_kernel,
    is_isomorphic,
    validate_grid,
    zero_grid,
)
from .cohp1_driver import CohP1Driver
from .demo import DEMOS, grid_demo
from .driver import CategoryDriver
from .findim import IDENTITY_FUNCTOR, ZERO_FUNCTOR, FinDimDriver
from .functors import (
    Delta,
    Delta_lambda,
    Delta_rho,
    apply_delta_family,
    apply_recollement,
    counit,
    delta,
    delta_lambda,
    grid_shift,
    iota,
    iota_lambda,
    iota_rho,
    pi,
    pi_lambda,
    pi_rho,
    point_grid,
    restriction,
    unit,
)
from .grid import ABSENT, ETA, KILLED, ZERO, Direction, GridMorphism, GridObject, GridShape
from .phi import PhiTranslation, gldim_via_phi, grid_ext, to_matrix_algebra

__all__ = [
    "ABSENT",
    "CategoryDriver",
    "CohP1Driver",
    "DEMOS",
    "Delta",
    "Delta_lambda",
    "Delta_rho",
    "Direction",
    "ETA",
    "FinDimDriver",
    "GridMorphism",
    "GridObject",
    "GridShape",
    "IDENTITY_FUNCTOR",
    "KILLED",
    "PhiTranslation",
    "ZERO",
    "ZERO_FUNCTOR",
    "adjunction_dims",
    "apply_delta_family",
    "apply_recollement",
    "build_cotilting_general",
    "build_cotilting_one_weight",
    "canonical_sequence",
    "check_cotilting",
    "counit",
    "delta",
    "delta_epimorphism",
    "delta_lambda",
    "general_summands",
    "gldim_experiment",
    "gldim_via_phi",
    "grid_cokernel",
    "grid_demo",
    "grid_direct_sum",
    "grid_ext",
    "grid_hom",
    "grid_hom_dim",
    "grid_identity",
    "grid_kernel",
    "grid_shift",
    "iota",
    "iota_lambda",
    "iota_rho",
    "is_isomorphic",
    "lift_summand",
    "one_weight_summands",
    "pi",
    "pi_lambda",
    "pi_rho",
    "point_grid",
    "recollement_identities",
    "resolving_member",
    "restriction",
    "to_matrix_algebra",
    "unit",
    "unit_counit_analysis",
    "validate_grid",
    "zero_grid",
]

"""Metric projection onto simplicial lattice cones, with verification suites.

The package models finite-dimensional inner-product spaces ordered by a
simplicial cone ``{x : B x >= 0}``, computes the metric projection onto the
cone by a closed form (the positive part) and by Dykstra's alternating
projections, and ships seeded property suites that check the governing
equivalence: the induced norm is a lattice norm exactly when the cone
projection is isotone and subadditive, in which case it equals the positive
part.
"""

from .errors import (
    ConditioningError,
    ConeLatticeError,
    DimensionMismatchError,
    InstanceFormatError,
    InternalCheckError,
    NonConvergenceError,
    SpaceValidationError,
)
from .estimator import ConeProjection
from .funcspaces import (
    EvalNodeSpace,
    QuadratureGrid,
    build_eval_space,
    build_l2_space,
    cauchy_distance,
    cauchy_distance_exact,
    cauchy_element,
    cauchy_sup_gap,
    eval_nodes,
    gauss_grid,
    grid_norm,
    simpson_grid,
)
from .harness import (
    Classification,
    LatticeNormExactness,
    Report,
    TrialConfig,
    Witness,
    check_identities,
    check_isotone,
    check_lattice_norm_sampled,
    check_moreau,
    check_oracle_agreement,
    check_positive_pairs,
    check_subadditive,
    classify_instance,
    instance_digest,
    is_lattice_norm_exact,
    run_suite,
)
from .instances import load_instance, parse_instance, save_instance
from .order import (
    OrderBasis,
    OrderedSpace,
    absolute,
    disjoint,
    identity_order,
    inf,
    leq,
    neg_part,
    order_basis,
    ordered_space,
    pos_part,
    pos_part_rows,
    sup,
)
from .projection import (
    BatchProjection,
    ProjectionCertificate,
    ProjectionResult,
    certificate_check,
    cone_generators,
    moreau_decompose,
    polar_generators,
    project,
    project_closed_form,
    project_dykstra,
    project_dykstra_rows,
)
from .spaces import (
    InnerProductSpace,
    ValidationResult,
    euclidean_space,
    inner,
    inner_rows,
    inner_space,
    norm,
    norm_rows,
    validate_gram,
    validate_space,
)

__version__ = "0.1.0"

__all__ = [
    "BatchProjection",
    "Classification",
    "ConditioningError",
    "ConeLatticeError",
    "ConeProjection",
    "DimensionMismatchError",
    "EvalNodeSpace",
    "InnerProductSpace",
    "InstanceFormatError",
    "InternalCheckError",
    "LatticeNormExactness",
    "NonConvergenceError",
    "OrderBasis",
    "OrderedSpace",
    "ProjectionCertificate",
    "ProjectionResult",
    "QuadratureGrid",
    "Report",
    "SpaceValidationError",
    "TrialConfig",
    "ValidationResult",
    "Witness",
    "absolute",
    "build_eval_space",
    "build_l2_space",
    "cauchy_distance",
    "cauchy_distance_exact",
    "cauchy_element",
    "cauchy_sup_gap",
    "certificate_check",
    "check_identities",
    "check_isotone",
    "check_lattice_norm_sampled",
    "check_moreau",
    "check_oracle_agreement",
    "check_positive_pairs",
    "check_subadditive",
    "classify_instance",
    "cone_generators",
    "disjoint",
    "euclidean_space",
    "eval_nodes",
    "gauss_grid",
    "grid_norm",
    "identity_order",
    "inf",
    "inner",
    "inner_rows",
    "inner_space",
    "instance_digest",
    "is_lattice_norm_exact",
    "leq",
    "load_instance",
    "moreau_decompose",
    "neg_part",
    "norm",
    "norm_rows",
    "order_basis",
    "ordered_space",
    "parse_instance",
    "polar_generators",
    "pos_part",
    "pos_part_rows",
    "project",
    "project_closed_form",
    "project_dykstra",
    "project_dykstra_rows",
    "save_instance",
    "simpson_grid",
    "sup",
    "validate_gram",
    "validate_space",
]

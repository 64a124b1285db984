"""Pinned orthonormal bases of subspaces and explicit perturbation bounds.

An orthonormal basis matrix of a subspace is only unique up to rotation.
Requiring the product with a fixed target matrix ``d`` to be symmetric
positive semidefinite pins the basis down: completely when the product has
full rank, and up to a small orthogonal freedom otherwise.  This package
computes pinned bases, canonical-angle distances between subspaces, and
explicit bounds on how far a pinned basis can move when its subspace moves,
together with a reproducible experiment harness that measures how tight the
bounds are.
"""

from .alignment import (
    AlignedBasisSet,
    CanonicalPolar,
    HausdorffEstimate,
    align,
    hausdorff_distance_estimate,
    optimal_representative,
    polar,
)
from .bounds import (
    BoundReport,
    PolarFactorBounds,
    WedinBounds,
    eta,
    evaluate_instance,
    polar_factor_bound,
    wedin_bound,
    xi,
    xi_sharpened,
)
from .errors import (
    DimensionMismatch,
    EmptyComplement,
    InvalidBasis,
    InvalidInput,
    NotAligned,
    NotApplicable,
    NumericalFailure,
    RankMismatch,
    ShapeError,
    SubspaceAlignError,
    UnsupportedOrder,
    VerificationFailure,
)
from .experiments import (
    ClosedFormCheck,
    ExperimentConfig,
    SweepRow,
    default_delta_grid,
    make_pair,
    pinning_matrix,
    run_sweep,
    verify_closed_form,
)
from .kernels import (
    NORM_KINDS,
    UNIT_ROUNDOFF,
    SvdFactors,
    check_orthonormal,
    haar_orthogonal,
    hadamard,
    is_hadamard_order,
    matrix_norm,
    orthonormal_completion,
    random_orthonormal,
    singular_values,
    svd,
    truncated_norm,
)
from .matrixio import format_matrix, load_matrix, parse_matrix, save_matrix
from .metrics import (
    AngleSpectrum,
    align_rotation,
    canonical_angles,
    sin_theta_norm,
    subspace_distance,
    truncated_sin_theta_norm,
)

__version__ = "0.1.0"

__all__ = [
    "AlignedBasisSet",
    "AngleSpectrum",
    "BoundReport",
    "CanonicalPolar",
    "ClosedFormCheck",
    "DimensionMismatch",
    "EmptyComplement",
    "ExperimentConfig",
    "HausdorffEstimate",
    "InvalidBasis",
    "InvalidInput",
    "NORM_KINDS",
    "NotAligned",
    "NotApplicable",
    "NumericalFailure",
    "PolarFactorBounds",
    "RankMismatch",
    "ShapeError",
    "SubspaceAlignError",
    "SvdFactors",
    "SweepRow",
    "UNIT_ROUNDOFF",
    "UnsupportedOrder",
    "VerificationFailure",
    "WedinBounds",
    "align",
    "align_rotation",
    "canonical_angles",
    "check_orthonormal",
    "default_delta_grid",
    "eta",
    "evaluate_instance",
    "format_matrix",
    "haar_orthogonal",
    "hadamard",
    "hausdorff_distance_estimate",
    "is_hadamard_order",
    "load_matrix",
    "make_pair",
    "matrix_norm",
    "optimal_representative",
    "orthonormal_completion",
    "parse_matrix",
    "pinning_matrix",
    "polar",
    "polar_factor_bound",
    "random_orthonormal",
    "run_sweep",
    "save_matrix",
    "sin_theta_norm",
    "singular_values",
    "subspace_distance",
    "svd",
    "truncated_norm",
    "truncated_sin_theta_norm",
    "verify_closed_form",
    "wedin_bound",
    "xi",
    "xi_sharpened",
]

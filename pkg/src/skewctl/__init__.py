"""Numerical toolkit for linear systems with matrix symmetries.

Covers symmetry-respecting minimal realizations, static skew-symmetric
pole placement, isotropic-subspace geometry with the exact solution
count, and the explicit real skew-symmetric system built from osculating
flags of a rational normal curve.
"""

from .errors import SkewctlError
from .matcore import (
    DEFAULT_TOL,
    Poly,
    PolyMatrix,
    ToleranceConfig,
    char_poly,
    coeffs_to_power_sums,
    numerical_rank,
    pfaffian,
    poly_sqrt,
    power_sums_to_coeffs,
    standard_form,
    takagi_skew,
    takagi_symmetric,
)
from .sysreal import (
    Realization,
    SymmetryType,
    TransferProbe,
    classify_realization,
    classify_transfer,
    is_minimal,
    kalman_transform,
    markov_parameters,
    mcmillan_degree,
    moduli_dimension,
    symmetrize,
    transfer_eval,
    transform,
    transform_group_check,
)
from .feedback import (
    FeedbackProblem,
    GenericParams,
    SkewFeedback,
    SolutionSet,
    closed_loop_charpoly,
    dpsi0,
    generic_system,
    place_poles,
    psi_map,
    verify_structure,
)
from .schubert import (
    FormKind,
    PlaneBasis,
    annihilator,
    dm,
    geometry_identity_check,
    intersection_margin,
    intersection_test,
    isotropic_check,
    subspace_distance,
)
from .purbhoo import (
    OsculatingSystem,
    gamma_curve,
    k_matrix,
    osculating_frame,
    purbhoo_transfer,
    reality_experiment,
)

__version__ = "0.1.0"

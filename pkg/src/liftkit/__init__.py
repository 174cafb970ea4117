"""liftkit: constrained interpolation, commutant lifting, model spaces."""

from .errors import (ConfigError, ConstraintViolated, DegreeTooSmall,
                     DimensionMismatch, DomainError, InconsistentGenerators,
                     LiftkitError, NotAContraction, NotASolution,
                     SingularResolvent, WNotNormalizedAtZero)
from .hardy import (AnalyticFn, PolyOpFn, TruncationGrid, analytic_toeplitz,
                    column_operator, default_grid, multiplication_operator,
                    shift_and_embed)
from .lifting import (InterpolationProblem, SolutionReport, central_C,
                      omega_hat, parameter_membership, random_constrained_z,
                      random_problem, solve_from_Z, uniqueness_certificate,
                      verify_solution, z_from_C)
from .linalg import (Subspace, as_operator, defect, haar_unitary,
                     hermitian_sqrt_psd, is_contraction, operator_norm,
                     orthonormal_range)
from .modelspace import (BlaschkeFactor, InnerFn, ModelSpace,
                         check_decompositions, h_from_Z_theta, model_space,
                         mult_contraction_test, pointwise_mult_check,
                         random_inner, random_multiplier, theta_shift,
                         z_from_H_theta)
from .rcl import (LiftingCandidate, RclDataSet, RclReport, b_to_gamma,
                  data_set_from_omega, gamma_to_B, omega_roundtrip_residual,
                  random_data_set, sns_lifting, underlying_contraction,
                  validate_data_set, verify_rcl)
from .schur import (SchurRealization, constrained_completion, herglotz_eval,
                    random_schur, taylor_coeffs)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFn", "BlaschkeFactor", "ConfigError", "ConstraintViolated",
    "DegreeTooSmall", "DimensionMismatch", "DomainError",
    "InconsistentGenerators", "InnerFn", "InterpolationProblem",
    "LiftingCandidate", "LiftkitError", "ModelSpace", "NotAContraction",
    "NotASolution", "PolyOpFn", "RclDataSet", "RclReport", "SchurRealization",
    "SingularResolvent", "SolutionReport", "Subspace", "TruncationGrid",
    "WNotNormalizedAtZero", "analytic_toeplitz", "as_operator", "b_to_gamma",
    "central_C", "check_decompositions", "column_operator",
    "constrained_completion", "data_set_from_omega", "defect", "default_grid",
    "gamma_to_B", "h_from_Z_theta", "haar_unitary", "herglotz_eval",
    "hermitian_sqrt_psd", "is_contraction", "model_space",
    "mult_contraction_test", "multiplication_operator", "omega_hat",
    "omega_roundtrip_residual", "operator_norm", "orthonormal_range",
    "parameter_membership", "pointwise_mult_check", "random_constrained_z",
    "random_data_set", "random_inner", "random_multiplier", "random_problem",
    "random_schur", "sns_lifting", "shift_and_embed", "solve_from_Z",
    "taylor_coeffs", "theta_shift", "underlying_contraction",
    "uniqueness_certificate", "validate_data_set", "verify_rcl",
    "verify_solution", "z_from_C", "z_from_H_theta",
]

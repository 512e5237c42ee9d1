"""Amplitude-phase operators that extract a single harmonic from a
trigonometric polynomial: ``sum_j X_j T(x - lambda_j) = tau_mu(x)``."""
from .chebyshev import OmegaSet, R_coeffs, R_root_set, branch_omega, omega_set, r_coeffs, r_eval
from .estimator import HarmonicExtractor
from .exceptions import (
    ApoError,
    Degenerate,
    DegreeExceeded,
    ExtrapolationUnstable,
    MaskViolation,
    NoConvergence,
    NotDegenerate,
    NotEvenCase,
    SingularNodes,
    UnsupportedFamily,
)
from .moments import (
    MomentData,
    NodeSet,
    generating_poly,
    moment_residual,
    prony_solve,
    regularity_check,
    structure_checks,
    vandermonde_solve,
)
from .poly import ComplexPoly, aberth_roots, poly_roots
from .regularization import (
    AugmentedMoments,
    nonregular_generating_poly,
    omega_perturb_validate,
    recover_system,
    tail_perturb_poly,
    tail_perturb_validate,
)
from .solutions import (
    FamilySpec,
    auto_family,
    even_case_filter,
    solve_general,
    solve_mu_equals_n,
    solve_mu_one,
    solve_mu_two,
)
from .trig import (
    Apo,
    TrigPolynomial,
    apply_apo,
    apply_to_coeffs,
    extract_harmonic,
    power_spectrum,
    power_sum,
    series_mask_check,
)

__version__ = "0.1.0"

__all__ = [
    "Apo",
    "ApoError",
    "AugmentedMoments",
    "ComplexPoly",
    "Degenerate",
    "DegreeExceeded",
    "ExtrapolationUnstable",
    "FamilySpec",
    "HarmonicExtractor",
    "MaskViolation",
    "MomentData",
    "NoConvergence",
    "NodeSet",
    "NotDegenerate",
    "NotEvenCase",
    "OmegaSet",
    "R_coeffs",
    "R_root_set",
    "SingularNodes",
    "TrigPolynomial",
    "UnsupportedFamily",
    "aberth_roots",
    "apply_apo",
    "apply_to_coeffs",
    "auto_family",
    "branch_omega",
    "even_case_filter",
    "extract_harmonic",
    "generating_poly",
    "moment_residual",
    "nonregular_generating_poly",
    "omega_perturb_validate",
    "omega_set",
    "poly_roots",
    "power_spectrum",
    "power_sum",
    "prony_solve",
    "r_coeffs",
    "r_eval",
    "recover_system",
    "regularity_check",
    "series_mask_check",
    "solve_general",
    "solve_mu_equals_n",
    "solve_mu_one",
    "solve_mu_two",
    "structure_checks",
    "tail_perturb_poly",
    "tail_perturb_validate",
    "vandermonde_solve",
    "__version__",
]

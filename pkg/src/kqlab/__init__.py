"""kqlab: Bergman functions and balanced metrics of radial Kähler fibrations.

A numerical verification laboratory: jet arithmetic for exact profile
derivatives, the curvature engine for expansion coefficients of fibered
metrics, the constant-coefficient classification checker, fiber-moment
quadrature against Gamma closed forms, the Bergman kernel series with its
exact product-law targets, and brute-force Gram-matrix oracles.
"""

from .bergman import (BalancedCertificate, MomentTable, QuantizationSetup,
                      Spectrum, balanced_certify, balanced_setup,
                      bergman_series, closed_target, density_H, fiber_moment,
                      fiber_moment_direct, generating_coefficients,
                      generating_identity_check, moment_table, psi_moment,
                      sphere_monomial_integral)
from .curvature import (BaseGeometry, ClassificationVerdict, ClosedCoefficients,
                        CurvatureReport, branch_coefficients, classify_check,
                        curvature_report, polyquad_closed,
                        required_base_coefficients)
from .jets import TaylorJet
from .oracle import (Cp1OracleReport, GramOracleConfig, HartogsOracleReport,
                     cp1_bergman_oracle, gram_offdiagonal_probe,
                     hartogs_gram_oracle)
from .profiles import (AdmissibilityReport, FiberCoordinates, RadialProfile,
                       admissibility, custom, fiber_coordinates, linear,
                       log_affine, log_ball, profile_jet, t_from_x)
from .special import (ShiftedProduct, beta, dim_h0_cpd, gamma_ratio, log_gamma,
                      product_shifted)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityReport",
    "BalancedCertificate",
    "BaseGeometry",
    "ClassificationVerdict",
    "ClosedCoefficients",
    "Cp1OracleReport",
    "CurvatureReport",
    "FiberCoordinates",
    "GramOracleConfig",
    "HartogsOracleReport",
    "MomentTable",
    "QuantizationSetup",
    "RadialProfile",
    "ShiftedProduct",
    "Spectrum",
    "TaylorJet",
    "admissibility",
    "balanced_certify",
    "balanced_setup",
    "bergman_series",
    "beta",
    "branch_coefficients",
    "classify_check",
    "closed_target",
    "cp1_bergman_oracle",
    "curvature_report",
    "custom",
    "density_H",
    "dim_h0_cpd",
    "fiber_coordinates",
    "fiber_moment",
    "fiber_moment_direct",
    "gamma_ratio",
    "generating_coefficients",
    "generating_identity_check",
    "gram_offdiagonal_probe",
    "hartogs_gram_oracle",
    "linear",
    "log_affine",
    "log_ball",
    "log_gamma",
    "moment_table",
    "polyquad_closed",
    "product_shifted",
    "profile_jet",
    "psi_moment",
    "required_base_coefficients",
    "sphere_monomial_integral",
    "t_from_x",
]

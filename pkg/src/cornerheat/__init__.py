"""Heat-trace coefficients of corners, cone points and rotations on surfaces.

The closed-form expansions live in :mod:`cornerheat.expansions`; the
numerical oracles used to verify them are in :mod:`cornerheat.geometry`,
:mod:`cornerheat.spectral` and :mod:`cornerheat.asymfit`.
"""
from .errors import (ConfigError, ConvexityError, CornerHeatError, DomainError, FitError,
                     InfeasibleError, InputError, ProfileError, SolverError, SymmetryError,
                     TruncationError)
from .expansions import (AngleData, CoefficientTriple, ConjecturalValue, CurvatureJet, Kind,
                         SeriesValue, Source, b_coeffs, c2_general_conjecture, cone_coeffs,
                         corner_coeffs, dist2_series, dist_pair_series, du_series,
                         ell_theta_series, kac_corner, offdiag_u_series, sine_power_sums,
                         u0_series, u1_series, u2_diagonal)
from .geometry import (RotationalProfile, SurfacePointPolar, curvature, geodesic_distance,
                       geodesic_shoot, jacobi_length, point_jet, u1_recursion_oracle,
                       vertex_jet)

__all__ = [
    "AngleData", "CoefficientTriple", "ConjecturalValue", "CurvatureJet", "Kind", "SeriesValue",
    "Source", "b_coeffs", "c2_general_conjecture", "cone_coeffs", "corner_coeffs",
    "dist2_series", "dist_pair_series", "du_series", "ell_theta_series", "kac_corner",
    "offdiag_u_series", "sine_power_sums", "u0_series", "u1_series", "u2_diagonal",
    "RotationalProfile", "SurfacePointPolar", "curvature", "geodesic_distance",
    "geodesic_shoot", "jacobi_length", "point_jet", "u1_recursion_oracle", "vertex_jet",
    "CornerHeatError", "InputError", "SymmetryError", "DomainError", "ConvexityError",
    "ProfileError", "SolverError", "TruncationError", "FitError", "ConfigError",
    "InfeasibleError",
]

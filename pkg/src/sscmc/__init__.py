"""Spherically symmetric constant mean curvature hypersurfaces in Schwarzschild-Kruskal."""
from .errors import (ClassificationError, DivergenceError, DomainError, SSCMCError,
                     VerificationError, WrongCaseError)
from .geometry import Model, Region, from_kruskal, to_kruskal
from .domain import classify_interior, find_RH, find_rH, cylindrical_H
from .profiles import BranchSpec, GridPolicy, Profile, SampledCurve, integrate_profile
from .assembly import build_complete, build_interior_only, build_from_Iprime
from .verify import mean_curvature_residual, principal_curvatures, verify_surface

__version__ = "0.1.0"

__all__ = [
    "ClassificationError", "DivergenceError", "DomainError", "SSCMCError", "VerificationError",
    "WrongCaseError", "Model", "Region", "from_kruskal", "to_kruskal", "classify_interior",
    "find_RH", "find_rH", "cylindrical_H", "BranchSpec", "GridPolicy", "Profile",
    "SampledCurve", "integrate_profile", "build_complete", "build_interior_only",
    "build_from_Iprime", "mean_curvature_residual", "principal_curvatures", "verify_surface",
]

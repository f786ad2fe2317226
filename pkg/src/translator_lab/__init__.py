"""Numerical toolkit for surfaces whose Gauss curvature equals ``<N, v> + lam``."""
from . import errors, families, geomcore, global_checks, mesh_export, phaseplane, profile_ode, singular_start
from .errors import TranslatorLabError
from .geomcore import SurfacePatch, fundamental_forms, gauss_curvature, translator_residual
from .profile_ode import ProfileState, Trajectory, classify, integrate, integrate_from_axis
from .singular_start import PicardConfig, solve_picard

__version__ = "0.1.0"

__all__ = [
    "errors", "families", "geomcore", "global_checks", "mesh_export", "phaseplane", "profile_ode",
    "singular_start", "TranslatorLabError", "SurfacePatch", "fundamental_forms", "gauss_curvature",
    "translator_residual", "ProfileState", "Trajectory", "classify", "integrate", "integrate_from_axis",
    "PicardConfig", "solve_picard",
]

"""Geometry and dynamics on the two-dimensional para-Kahler space form."""
from . import calculus, geometry, hamiltonian, integrator, lagrangian
from ._backend import default as _default_kernel
from .errors import (
    AxisSingularity, BasePointMismatch, DegenerateLagrangian, DegeneratePlane,
    EvalDomainError, ExprSyntaxError, IsotropicVector, ParaKahlerError,
    UnknownFunction, UnknownIdentifier,
)

__version__ = "0.1.0"
BACKEND = _default_kernel.NAME

__all__ = [
    "calculus", "geometry", "hamiltonian", "integrator", "lagrangian",
    "AxisSingularity", "BasePointMismatch", "DegenerateLagrangian", "DegeneratePlane",
    "EvalDomainError", "ExprSyntaxError", "IsotropicVector", "ParaKahlerError",
    "UnknownFunction", "UnknownIdentifier", "BACKEND", "__version__",
]

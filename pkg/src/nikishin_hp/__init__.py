"""Multi-level Hermite-Padé polynomials for rationally perturbed Nikishin systems.

Everything is exact: rational arithmetic for the interpolation system,
Sturm sequences for sign changes and certified disks for complex roots.
"""

from ._backend import BACKEND, available_backends, use_backend
from .hp_system import (
    AssembledSystem,
    HPSolution,
    InstanceError,
    Perturbation,
    ProblemInstance,
    assemble,
    build_instance,
    extract_solution,
    nullspace,
    solve,
)
from .instances import canonical_generator, canonical_instance, canonical_perturbations
from .nikishin import DiscreteMeasure, MeasureError, NikishinGenerator

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AssembledSystem",
    "DiscreteMeasure",
    "HPSolution",
    "InstanceError",
    "MeasureError",
    "NikishinGenerator",
    "Perturbation",
    "ProblemInstance",
    "assemble",
    "available_backends",
    "build_instance",
    "canonical_generator",
    "canonical_instance",
    "canonical_perturbations",
    "extract_solution",
    "nullspace",
    "solve",
    "use_backend",
]

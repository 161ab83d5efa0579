"""Exact computations on graded modules for root stacks of ``[A^1/G_m]`` and of ``Spec Z``."""

from .linalg import FGAbelianGroup, IntMatrix, smith_normal_form
from .modules import DegreeWindow, GradedModule, ModuleMap
from .homology import GradedComplex, free_resolution, graded_ext
from .report import ClaimReport, SuiteConfig
from .suites import decompose_object, run_suite

__version__ = "0.1.0"

__all__ = [
    "ClaimReport",
    "DegreeWindow",
    "FGAbelianGroup",
    "GradedComplex",
    "GradedModule",
    "IntMatrix",
    "ModuleMap",
    "SuiteConfig",
    "decompose_object",
    "free_resolution",
    "graded_ext",
    "run_suite",
    "smith_normal_form",
]

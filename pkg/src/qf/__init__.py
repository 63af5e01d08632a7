"""Finite quandles: constructions, automorphisms, cohomology and extensions."""

from .algebra import FiniteGroup
from .catalog import parse_group, parse_quandle
from .cohomology import FiniteAbelianCoefficients, QuandleCohomology, cohomology_group
from .dynamical import DynamicalCocycle, build_extension
from .quandle import FiniteQuandle
from .report import Report

__all__ = [
    "DynamicalCocycle", "FiniteAbelianCoefficients", "FiniteGroup", "FiniteQuandle", "QuandleCohomology",
    "Report", "build_extension", "cohomology_group", "parse_group", "parse_quandle",
]
__version__ = "0.1.0"

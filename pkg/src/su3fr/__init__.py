"""Exact finite SU(3) subgroup toolkit over cyclotomic fields."""

from .cyclo import CycloNum, root_of_unity
from .engine import MatrixGroup, generate
from .mat3 import Mat3

__all__ = ["CycloNum", "Mat3", "MatrixGroup", "generate", "root_of_unity"]
__version__ = "0.1.0"

"""Exact constructions of extremal klt Calabi-Yau varieties and pairs built from Sylvester's sequence."""

from .errors import ConsistencyError, DimensionCapError, SingularMatrixError, UnsupportedShapeError
from .families import FAMILIES, FamilyRecord, build

__version__ = "0.1.0"

__all__ = ["ConsistencyError", "DimensionCapError", "SingularMatrixError",
           "UnsupportedShapeError", "FAMILIES", "FamilyRecord", "build"]

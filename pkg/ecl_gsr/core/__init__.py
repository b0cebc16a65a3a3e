"""Core utilities shared across ecl-gsr."""

from ecl_gsr.core.exceptions import (
    ConfigurationError,
    DivergenceError,
    EclGsrError,
    ExportError,
    GradientError,
    GraphFormatError,
    GraphValidationError,
    MemoryGuardError,
    NumericalError,
    SamplingError,
    ShapeError,
    TapeError,
)
from ecl_gsr.core.logging import setup_logging

__all__ = [
    "EclGsrError",
    "GraphFormatError",
    "GraphValidationError",
    "SamplingError",
    "ShapeError",
    "NumericalError",
    "TapeError",
    "GradientError",
    "DivergenceError",
    "ConfigurationError",
    "ExportError",
    "MemoryGuardError",
    "setup_logging",
]

"""Custom exceptions for ecl-gsr."""


class EclGsrError(Exception):
    """Base exception for all ecl-gsr errors."""

    pass


class GraphFormatError(EclGsrError, ValueError):
    """Malformed dataset file."""

    def __init__(self, message, file=None, line=None):
        self.file = str(file) if file is not None else None
        self.line = line
        location = ""
        if self.file is not None:
            location = f"{self.file}:{line}: " if line is not None else f"{self.file}: "
        super().__init__(f"{location}{message}")


class GraphValidationError(EclGsrError, ValueError):
    """Graph invariant violated."""

    pass


class SamplingError(EclGsrError, ValueError):
    """Sampling or perturbation request cannot be satisfied."""

    pass


class ShapeError(EclGsrError, ValueError):
    """Operand shapes are incompatible."""

    pass


class NumericalError(EclGsrError, ArithmeticError):
    """NaN or Inf produced by a computation."""

    def __init__(self, message, op=None, step=None):
        self.op = op
        self.step = step
        super().__init__(message)


class TapeError(EclGsrError, RuntimeError):
    """Invalid use of the gradient tape."""

    pass


class GradientError(EclGsrError, RuntimeError):
    """Gradients missing where they are required."""

    pass


class DivergenceError(NumericalError):
    """Training loss became non-finite."""

    def __init__(self, epoch, batch, value):
        self.epoch = epoch
        self.batch = batch
        self.value = value
        super().__init__(
            f"Total loss diverged at epoch {epoch}, batch {batch}: {value}",
            op="train",
        )


class ConfigurationError(EclGsrError, ValueError):
    """Configuration related error."""

    pass


class ExportError(EclGsrError, ValueError):
    """Artifact export failed."""

    pass


class MemoryGuardError(EclGsrError, MemoryError):
    """Request exceeds the configured size limits."""

    pass

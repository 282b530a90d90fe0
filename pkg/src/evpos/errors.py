"""Exception hierarchy shared by every evpos module."""

from __future__ import annotations


class EvposError(Exception):
    """Base class for all errors raised by evpos."""


class DimensionError(EvposError, ValueError):
    """Non-square, empty or size-mismatched matrix input."""


class NumericalFailure(EvposError):
    """An iterative kernel did not converge."""


class RangeError(EvposError, OverflowError):
    """A result left the representable floating point range."""


class SpectralCollisionError(EvposError):
    """A resolvent was requested at (or too close to) a spectral value."""

    def __init__(self, message: str, eigenvalue: complex):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotASpectralValueError(EvposError):
    """The requested point is not an eigenvalue within the clustering tolerance."""

    def __init__(self, message: str, value: complex):
        super().__init__(message)
        self.value = value


class ConditioningError(EvposError):
    """A basis or factorization was too ill-conditioned to trust."""

    def __init__(self, message: str, condition: float):
        super().__init__(message)
        self.condition = condition


class ContourError(EvposError):
    """Invalid integration contour for a spectral projection."""


class CircleIntersectsSpectrumError(ContourError):
    pass


class ForeignEigenvalueError(ContourError):
    pass


class InconsistencyError(EvposError):
    """Two independent decision pathways disagreed; usually a tolerance problem."""


class ParameterError(EvposError, ValueError):
    """Infeasible generator or configuration parameters."""

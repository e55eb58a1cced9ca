"""
Lab Exceptions

Domain errors raised by the spectral, operator, solver and diagnostics layers.
Run-level code catches these and records them instead of discarding work.
"""

from typing import Optional


class LabError(Exception):
    """Base class for all lab errors"""
    pass


# Grid and transform errors

class GridError(LabError):
    """Raised when grid parameters are invalid"""
    pass


class GridMismatchError(LabError):
    """Raised when two objects built on different grids are combined"""
    pass


class TransformSizeError(LabError):
    """Raised when an array does not match the grid size"""
    pass


# Operator errors

class NegativeTimeError(LabError):
    """Raised when a semigroup is evaluated at negative time"""
    pass


class UnderResolvedKernelError(LabError):
    """Raised when a kernel multiplier still carries mass at the Nyquist frequency"""
    pass


class QuadratureError(LabError):
    """Raised when a time quadrature fails its convergence check"""
    pass


# Norm errors

class ZeroFieldError(LabError):
    """Raised when a ratio is requested for an identically zero field"""
    pass


class DegenerateBoundError(LabError):
    """Raised when the right-hand side of an inequality vanishes"""
    pass


# Fixed point errors

class InadmissibleConfigError(LabError):
    """Raised when fixed point constants violate the contraction conditions"""
    pass


class FixedPointDivergenceError(LabError):
    """Raised when Picard iteration does not converge within max_iters"""

    def __init__(self, message: str, trace: Optional[list] = None):
        super().__init__(message)
        self.trace = trace or []


# Evolution errors

class StepperError(LabError):
    """Base class for errors that terminate a run at a known time"""

    def __init__(self, message: str, t: float = 0.0):
        super().__init__(message)
        self.t = t


class CFLViolationError(StepperError):
    """Raised when max|u| * max|xi| * dt exceeds the configured limit"""
    pass


class BlowupDetectedError(StepperError):
    """Raised when the state contains NaN or Inf"""
    pass


class ResolutionLostError(StepperError):
    """Raised when the spectral tail exceeds the resolution tolerance"""
    pass


class EpsilonListError(LabError):
    """Raised when an epsilon list is not positive, decreasing and long enough"""
    pass


class MemberRunError(LabError):
    """Raised when a member of a family or twin study fails"""
    pass


# Diagnostics errors

class MissingSeriesError(LabError):
    """Raised when a run record lacks the series a monitor needs"""
    pass


class MonitorCancelledError(LabError):
    """Raised inside a monitor computation once its timeout has expired"""
    pass


class LadderResolutionError(LabError):
    """Raised when a ladder exponent is beyond what the grid resolves"""
    pass


# IO errors

class ConfigError(LabError):
    """Raised when a configuration file cannot be parsed or validated"""
    pass


class ManifestError(LabError):
    """Raised when a run manifest is used out of order"""
    pass

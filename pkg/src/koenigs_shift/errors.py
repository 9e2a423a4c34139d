"""Exception hierarchy shared by every module."""


class ShiftError(Exception):
    """Base class for all errors raised by koenigs_shift."""


class NonInterior(ShiftError, ValueError):
    pass


class Singular(ShiftError, ValueError):
    pass


class NonPositiveRadius(ShiftError, ValueError):
    pass


class AmplitudeTooSmall(ShiftError, ValueError):
    pass


class OutOfSector(ShiftError, ValueError):
    pass


class BadAngle(ShiftError, ValueError):
    pass


class PointNotInDomain(ShiftError, ValueError):
    pass


class RayNotContained(ShiftError, ValueError):
    pass


class RadiusTooSmall(ShiftError, ValueError):
    pass


class BudgetExceeded(ShiftError, RuntimeError):
    pass


class NotFound(ShiftError, LookupError):
    """No inner-tangent radius certified.

    ``refuted`` is True when the failure is established analytically (the
    domain provably contains no cone around the positive real axis), False
    when only the finite search window failed to certify one.
    """

    def __init__(self, message, refuted=False):
        super().__init__(message)
        self.refuted = refuted


class PreconditionFailed(ShiftError, ValueError):
    pass


class EtaOutOfRange(ShiftError, ValueError):
    pass


class IndexOutOfRange(ShiftError, IndexError):
    pass


class TooFewSteps(ShiftError, ValueError):
    pass


class BadPartition(ShiftError, ValueError):
    pass


class OutOfDomain(ShiftError, ValueError):
    pass


class BranchViolation(ShiftError, ValueError):
    pass


class OmegaNotInHalfPlane(ShiftError, ValueError):
    pass


class ConfigError(ShiftError, ValueError):
    pass


class ParseError(ConfigError):
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(ConfigError):
    def __init__(self, message, key=None):
        super().__init__(message)
        self.key = key

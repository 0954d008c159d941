"""Exception and warning types raised across the package."""


class WalkZetaError(ValueError):
    """Base class for all library errors."""


class DimensionMismatch(WalkZetaError):
    pass


class NotSquare(WalkZetaError):
    pass


class SizeExceeded(WalkZetaError):
    pass


class BadSize(WalkZetaError):
    pass


class NotReal(WalkZetaError):
    pass


class NotTracePreserving(WalkZetaError):
    pass


class NotReducible(WalkZetaError):
    pass


class CapExceeded(WalkZetaError):
    pass


class DetNearZero(WalkZetaError):
    pass


class NotConverged(WalkZetaError):
    pass


class GridTooCoarse(WalkZetaError):
    pass


class ZeroEntry(WalkZetaError):
    pass


class RadiusViolation(WalkZetaError):
    pass


class BranchRiskWarning(RuntimeWarning):
    """A determinant sits close to the negative real axis, where the principal log jumps."""

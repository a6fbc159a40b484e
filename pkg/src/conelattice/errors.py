"""Exception types shared across the package."""


class ConeLatticeError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatchError(ConeLatticeError, ValueError):
    """Structural error: a shape or length does not match the ambient dimension."""


class SpaceValidationError(ConeLatticeError, ValueError):
    """A Gram matrix or order basis failed validation.

    Carries the :class:`~conelattice.spaces.ValidationResult` (when one was
    produced) so callers can inspect the failing property and witness.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ConditioningError(ConeLatticeError, ValueError):
    """A matrix was rejected because its condition estimate is too large."""


class InstanceFormatError(ConeLatticeError, ValueError):
    """An instance file or document was rejected; the message names the field."""


class NonConvergenceError(ConeLatticeError, RuntimeError):
    """The iterative projection ran out of cycles before reaching tolerance."""

    def __init__(self, message, point=None, residual=None, iterations=None):
        super().__init__(message)
        self.point = point
        self.residual = residual
        self.iterations = iterations


class InternalCheckError(ConeLatticeError, RuntimeError):
    """Two redundant computations of the same quantity disagree.

    This signals a bug in the order or projection algebra, not bad input.
    """

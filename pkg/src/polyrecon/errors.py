"""Exception types shared across the package."""


class PolyReconError(Exception):
    """Base class for all library errors."""


class Graph6Error(PolyReconError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class InconsistentDeckError(PolyReconError, ValueError):
    """Input data cannot come from any simple graph."""


class NonSquareError(InconsistentDeckError):
    """A series that should be a perfect square is not one."""


class NotInvertibleError(PolyReconError, ArithmeticError):
    pass


class RankDeficientError(PolyReconError, ArithmeticError):
    """A Hankel block needed for a solve is singular."""

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size


class InsufficientDataError(PolyReconError, ValueError):
    """A request for more coefficients than the input determines."""


class PrecisionError(PolyReconError, ArithmeticError):
    pass


class NotApplicableError(PolyReconError):
    """The requested procedure does not apply to this input."""

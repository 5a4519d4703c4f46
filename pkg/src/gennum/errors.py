"""Exception hierarchy shared across the package."""


class GennumError(Exception):
    """Base class for all domain errors."""


class NotInvertibleError(GennumError):
    """Leading behaviour is zero or unknown; no series inverse exists."""


class NotInvertibleWrtError(GennumError):
    """Element has no inverse with respect to the given index set."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class EmptyIdempotentError(GennumError):
    """The index set is finite, so its idempotent vanishes."""


class NotAPartitionError(GennumError):
    """Index sets fail to tile the grid (overlap or gap)."""


class BranchRangeError(GennumError):
    """Requested root branch index is outside [0, n)."""


class TruncationExhaustedError(GennumError):
    """Separating the root branches needs orders beyond the inputs' truncation."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class NumericBreakdownError(GennumError):
    """Floating-point root extraction could not resolve values above tolerance."""


class DimMismatchError(GennumError):
    """Matrix or vector dimensions are incompatible."""


class NotRealError(GennumError):
    """Operation requires a real element (imaginary parts above tolerance)."""


class NotPositiveError(GennumError):
    """Operation requires a positive element."""


class RadiusViolationError(GennumError):
    """Argument pseudonorm is not below the series' convergence radius."""


class IterationDivergedError(GennumError):
    """Newton polish failed to reach the requested residual order."""

    def __init__(self, message, order=None):
        super().__init__(message)
        self.order = order


class DegenerateBeyondTruncationError(GennumError):
    """Eigenspace cannot be separated above the working truncation."""


class NotNormalizableError(GennumError):
    """Vector norm is not invertible, so no state can be formed."""


class ExprSyntaxError(GennumError):
    """Parse failure, carrying position and the expected token set."""

    def __init__(self, message, position, expected=()):
        super().__init__(message)
        self.position = position
        self.expected = tuple(expected)

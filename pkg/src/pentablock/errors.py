"""Exception hierarchy.

Every error raised on purpose by the package derives from ``PentaError``.
The CLI maps the subclasses to exit codes through ``exit_code``.
"""


class PentaError(Exception):
    """Base class for package errors."""

    exit_code = 5


class DataError(PentaError, ValueError):
    """Malformed or inadmissible input data."""

    exit_code = 2


class DegreeError(DataError):
    """A polynomial exceeds its formal degree."""


class DomainError(DataError):
    """An argument lies outside the domain of an operation."""


class NumericError(PentaError, ArithmeticError):
    """Numerical failure (ill conditioning, lost precision)."""

    exit_code = 5


class SingularError(NumericError):
    """A denominator vanishes."""


class UndefinedRootsError(DataError):
    """Roots of the zero polynomial were requested."""


class NotNonnegativeError(PentaError, ValueError):
    """A trigonometric polynomial takes negative values on the circle."""

    exit_code = 3


class PairingError(NumericError):
    """Roots could not be paired through the unit circle."""


class ParityError(NumericError):
    """A root on the circle has odd multiplicity where even is required."""


class RoyalFunctionError(DataError):
    """The royal polynomial vanishes identically."""


class AssemblyError(NumericError):
    """A penta-inner representation could not be assembled."""


class CompositionError(NumericError):
    """Precomposition with a Blaschke product failed verification."""


class RoundtripError(NumericError):
    """Data recovered from a construction disagrees with its input."""


class NotExtremalError(DataError):
    """The extremal (equality) precondition does not hold."""


class InconsistentDataError(DataError):
    """Data violate a consistency requirement of the equality case."""


class InfeasibleError(PentaError):
    """A Schwarz problem has no solution; carries the certificate."""

    exit_code = 4

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class InconsistencyError(NumericError):
    """An internal assertion of the Schwarz solver failed."""


class UnreachableTargetError(InconsistencyError):
    """The target passes the feasibility test but the constructive
    solver cannot reach its first coordinate.

    ``reachable`` holds the largest modulus of ``a0`` the construction
    can attain for the given ``(lambda0, s0, p0)``.
    """

    def __init__(self, message, reachable=None, requested=None):
        super().__init__(message)
        self.reachable = reachable
        self.requested = requested

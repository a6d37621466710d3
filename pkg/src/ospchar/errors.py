"""Exception hierarchy shared by all modules."""


class OspCharError(Exception):
    """Base class for every library error."""


class ModeMismatchError(OspCharError):
    """Exact and float values (or different generator counts) were mixed."""


class ZeroBodyError(OspCharError):
    """An element with zero body was used where a unit is required."""


class DomainError(OspCharError):
    """Body value lies outside the domain of an analytic function."""


class ExactnessError(OspCharError):
    """The requested value is not representable as a Gaussian rational."""


class ParityError(OspCharError):
    """An argument has the wrong parity (even vs odd)."""


class ShapeError(OspCharError):
    """Matrix or vector shapes are incompatible."""


class DeterminantError(OspCharError):
    """SL(2) parameters with determinant different from 1."""


class MembershipError(OspCharError):
    """A matrix failed the OSp(1|2) membership equations."""


class CentralError(OspCharError):
    """A central matrix (+-identity) admits no triangular normal form."""


class NumericalError(OspCharError):
    """A root search or residual check failed tolerance."""


class SingularRootError(OspCharError):
    """Newton lifting was started at a root that is not simple."""


class PreconditionError(OspCharError):
    """An operation's stated precondition is violated."""


class InsufficientSamplesError(OspCharError):
    """Fewer sample points than monomials in a relation census."""


class WordSyntaxError(OspCharError):
    """A free-group word string failed to parse."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at index {position})")
        self.position = position

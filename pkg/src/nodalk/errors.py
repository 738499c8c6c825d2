"""Exception hierarchy.

Numerical precondition failures (aliasing, contours through zeros, singular
densities) share a base class so the command line can map them to one exit
code.
"""


class NodalkError(Exception):
    """Base class for all package errors."""


class DomainError(NodalkError, ValueError):
    """Argument outside the domain of the operation."""


class EmptyFiberError(DomainError):
    """|t| is at or beyond the radius of the base disc."""


class MismatchedBasePointError(DomainError):
    """Forms or vectors attached to different points were combined."""


class NumericalPreconditionError(NodalkError, ValueError):
    """A sampling or conditioning requirement is violated."""


class AliasingError(NumericalPreconditionError):
    """Too few samples to resolve the requested exponent range."""


class ContourThroughZeroError(NumericalPreconditionError):
    """The function (nearly) vanishes on the counting contour."""

    def __init__(self, message, angle=None, radius=None):
        super().__init__(message)
        self.angle = angle
        self.radius = radius


class SingularDensityError(NumericalPreconditionError):
    """The hyperbolic density is evaluated on the boundary of the fiber."""


class PolarBranchError(NodalkError, ValueError):
    """Restriction of a polar section to the branch carrying the pole."""


class DegenerateBranchError(NodalkError):
    """A branch restriction vanishes identically.

    This is the signal for a divisor containing a whole component of the
    nodal fiber; no zero order is defined.
    """

    def __init__(self, branch):
        super().__init__(f"restriction to the {branch}-branch vanishes identically")
        self.branch = branch


class ConditioningWarning(UserWarning):
    """Recovered coefficients lost most of their significant digits."""

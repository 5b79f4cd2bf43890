"""Exception hierarchy shared across the library."""


class SkewctlError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(SkewctlError):
    pass


class OddDimension(SkewctlError):
    pass


class NotSymmetric(SkewctlError):
    pass


class NotSkewSymmetric(SkewctlError):
    pass


class Singular(SkewctlError):
    pass


class NotASquare(SkewctlError):
    """Polynomial is not the square of a polynomial within tolerance."""


class DegreeMismatch(SkewctlError):
    pass


class SingularAtSample(SkewctlError):
    """Evaluation point coincides (numerically) with a pole."""


class NotMinimal(SkewctlError):
    pass


class NotEquivalent(SkewctlError):
    """Two realizations do not define the same transfer function."""


class SymmetryMismatch(SkewctlError):
    """Requested symmetry type is not carried by the transfer function."""


class VerificationFailed(SkewctlError):
    """A mandatory postcondition check did not hold."""


class InvalidParams(SkewctlError):
    pass


class ParityError(SkewctlError):
    pass


class InsufficientData(SkewctlError):
    pass


class Underdetermined(SkewctlError):
    """Fewer pole conditions than feedback coordinates."""


class NoConvergence(SkewctlError):
    """No Newton start reached the residual target."""


class StructureViolated(SkewctlError):
    """Closed-loop matrix lost its structural identity."""


class InternalNonIntegral(SkewctlError):
    """An exact integer formula produced a non-integer; implementation bug."""

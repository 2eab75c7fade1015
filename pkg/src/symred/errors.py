"""Exception types shared across the package."""


class SymredError(Exception):
    """Base class for all errors raised by symred."""


class NonPrimitiveColumn(SymredError):
    """A conormal column is zero or its entries have a common factor."""


class NoPositiveRelation(SymredError):
    """No strictly positive integer relation among the conormals was found
    within the configured search bound (non-compact polytope, or bound too
    small)."""


class NotProportional(SymredError):
    """The anticanonical and level functionals on the kernel are not
    positively proportional."""


class EmptyInterior(SymredError):
    """The polytope has empty interior."""


class ShapeMismatch(SymredError):
    """A point, tangent vector or Lie-algebra element does not match the
    shapes prescribed by the reduction data."""


class OffSphere(SymredError):
    """The point is too far from the weighted sphere for the requested
    operation."""


class OffLevelSet(SymredError):
    """The point is too far from the moment level set for the requested
    operation."""


class RankDeficient(SymredError):
    """The moment-map differential does not have full rank at the point
    (non-regular point of the level set)."""


class NonUnit(SymredError):
    """Input quaternion vector is not of unit norm."""


class NotSpecialUnitary(SymredError):
    """The supplied 2x2 matrix is not in SU(2)."""


class ParseError(SymredError):
    """A spec document is malformed; the message names the offending field."""


class InvariantViolation(SymredError):
    """A spec document parses but violates a structural invariant; the
    message names the invariant."""

"""Exception taxonomy shared across the package.

Every error raised intentionally by this library derives from OrliczLabError,
so callers (and the CLI) can distinguish usage/modelling problems from bugs.
"""


class OrliczLabError(Exception):
    """Base class for all library errors."""


class DegenerateHull(OrliczLabError):
    """Input points do not span a full-dimensional convex body."""


class OriginNotInterior(OrliczLabError):
    """The origin is not strictly inside the body."""


class ShapeMismatch(OrliczLabError):
    """A vector or matrix has the wrong dimensions for the operation."""


class MissingQuadrature(OrliczLabError):
    """A ball body was used where a sphere quadrature is required."""


class InvalidSpec(OrliczLabError):
    """A JSON/dict spec could not be turned into a valid object."""


class InvalidScheme(InvalidSpec):
    """Unknown or unusable quadrature scheme."""


class NoBracket(OrliczLabError):
    """The support equation has no sign change within the search range."""


class NonFinite(OrliczLabError):
    """A function evaluation produced NaN or an unusable infinity."""


class NonPositiveSupport(OrliczLabError):
    """A support value needed for a polar integral is not positive."""


class UnsupportedDimension(OrliczLabError):
    """Operation not implemented for this ambient dimension."""


class DegenerateDirection(OrliczLabError):
    """Symmetrization direction is degenerate or ill-conditioned for the body."""


class EmptySection(OrliczLabError):
    """A fiber section contains no point of the body."""


class NotUnimodular(OrliczLabError):
    """A matrix expected to have determinant one does not."""


class InvariantViolation(OrliczLabError):
    """A constructed object failed one of its internal consistency checks."""

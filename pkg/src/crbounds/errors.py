"""Exception types shared across the package."""


class CRBoundsError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(CRBoundsError, ValueError):
    """An argument is outside its documented domain."""


class UnboundedRegionError(CRBoundsError):
    """A constraint set does not bound both rate axes."""


class GridMismatchError(CRBoundsError):
    """Regions were combined over different rate grids."""


class EmptyRegionError(CRBoundsError):
    """An operation requires a non-empty region."""


class InfeasibleTransformError(CRBoundsError):
    """The degradedness condition of the BC transform does not hold."""


class NumericalError(CRBoundsError):
    """A covariance was singular beyond the pseudo-inverse tolerance."""

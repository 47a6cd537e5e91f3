"""Exception types raised across the package."""


class SearchError(ValueError):
    """Base class for all domain errors."""


class NonPositivePrice(SearchError):
    pass


class InvertedInterval(SearchError):
    pass


class LengthMismatch(SearchError):
    pass


class PriceOutOfBounds(SearchError):
    pass


class ArityMismatch(SearchError):
    pass


class NonPositiveInput(SearchError):
    pass


class UnsupportedArity(SearchError):
    pass


class UnsupportedScalarization(SearchError):
    pass


class NotCanonical(SearchError):
    pass


class EmptyFront(SearchError):
    pass


class ToleranceNotPositive(SearchError):
    pass


class DiscontinuousScalarization(SearchError):
    pass


class NoSurfacePointFound(SearchError):
    pass


class WitnessOffSurface(SearchError):
    pass


class BudgetExceeded(SearchError):
    pass


class InstanceFormatError(SearchError):
    pass

"""Exception hierarchy shared by all modules."""


class CohTensorError(ValueError):
    """Base class for every error raised by this package."""


class NotHermitian(CohTensorError):
    pass


class NotADensity(CohTensorError):
    pass


class DimensionMismatch(CohTensorError):
    pass


class BadDimension(CohTensorError):
    pass


class BadTrace(CohTensorError):
    pass


class IndexOutOfRange(CohTensorError):
    pass


class BadSubset(CohTensorError):
    pass


class BadPosition(CohTensorError):
    pass


class BadPartition(CohTensorError):
    pass


class WeightNotNormalized(CohTensorError):
    pass


class BadWeight(CohTensorError):
    pass


class NegativeParameter(CohTensorError):
    pass


class OutOfRange(CohTensorError):
    pass


class EmptyGrid(CohTensorError):
    pass

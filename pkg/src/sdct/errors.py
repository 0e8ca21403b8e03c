"""Exception types shared across the package."""


class ShapeError(ValueError):
    """Tensor dimensions do not match what an operation or plan expects."""


class PlanError(ValueError):
    """A precomputed plan or FFT workspace was built for a different size."""


class FormatError(ValueError):
    """A tensor or image file is malformed."""


class UsageError(ValueError):
    """Invalid argument combination at the application level."""

"""Exceptions and warnings raised by :mod:`eqgames`."""


class AllCoefficientsZero(ValueError):
    """The gain polynomial is numerically identically zero (degenerate draw)."""


class RootAtToleranceBoundary(UserWarning):
    """A root was found where |P'(y*)| is too small to decide stability."""


class OutOfModelRange(ValueError):
    """An effective correlation falls outside [0, 1]."""


class NotPSD(ValueError):
    """A covariance matrix is not positive semidefinite."""


class ConvergenceFailure(RuntimeError):
    """Adaptive quadrature ran out of subdivisions.

    The partial integral and its error estimate are kept on the exception so
    callers can still report them.
    """

    def __init__(self, message, value, error):
        super().__init__(message)
        self.value = value
        self.error = error

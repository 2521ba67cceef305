"""Exception hierarchy shared by every module of the package."""


class BCOVError(Exception):
    """Base class for all errors raised by quintic_bcov."""


class ZeroConstantTerm(BCOVError):
    pass


class BadConstantTerm(BCOVError):
    pass


class NotMonic(BCOVError):
    pass


class MirrorIdentityViolation(BCOVError):
    pass


class Unstable(BCOVError):
    pass


class MissingVertexData(BCOVError):
    pass


class NotPolynomial(BCOVError):
    """A series failed to match its polynomial fit.

    ``order`` is the first q-order at which the mismatch was found.
    """

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class InsufficientInitialData(BCOVError):
    pass


class KernelDetected(BCOVError):
    pass


class NoFit(BCOVError):
    pass


class TruncationOverflow(BCOVError):
    pass

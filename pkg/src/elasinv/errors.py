"""Exception hierarchy shared by every module of the package."""


class ElasinvError(ValueError):
    """Base class for all errors raised by elasinv."""


class UnsupportedOrderError(ElasinvError):
    pass


class ContractionArityError(ElasinvError):
    pass


class FormatError(ElasinvError):
    """Malformed input: wrong shape, broken symmetry, unparseable file."""


class InvalidDecompositionError(ElasinvError):
    pass


class DomainError(ElasinvError):
    """Input outside the domain of an operation (e.g. a non-harmonic tensor)."""


class SingularBasisError(ElasinvError):
    pass


class NonGenericError(ElasinvError):
    """Raised when a genericity condition required by an operation fails.

    The offending detector values travel with the exception in ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RecoveryFailedError(ElasinvError):
    pass

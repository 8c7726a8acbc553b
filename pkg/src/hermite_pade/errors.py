"""Exception hierarchy.

Errors deriving from :class:`CertificateError` mean that an exact check of a
mathematical claim failed.  The CLI maps them to exit code 2; everything else
that is a caller mistake is a :class:`ValueError` subclass.
"""


class CertificateError(ArithmeticError):
    """An exact certificate was falsified."""


class NotDivisible(CertificateError):
    """Exact division left a nonzero remainder."""


class NonConstantQuotient(CertificateError):
    pass


class IdentityFalsified(CertificateError):
    pass


class DivisibilityFalsified(CertificateError):
    pass


class CoefficientNonZero(CertificateError):
    """A remainder series has a nonzero coefficient below its claimed order."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"coefficient {index} of the remainder is nonzero")


class ArityMismatch(ValueError):
    pass


class PreconditionError(ValueError):
    pass


class RankDeficient(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass

"""Exception types raised by the apo package."""


class ApoError(Exception):
    """Base class for all package errors."""


class DegreeExceeded(ApoError, ValueError):
    """Polynomial degree is larger than the operator's certified degree."""


class MaskViolation(ApoError):
    """A power sum that must vanish does not."""

    def __init__(self, offending, report=None):
        self.offending = list(offending)
        self.report = report
        super().__init__(f"non-zero power sums at beta = {self.offending}")


class SingularNodes(ApoError, ValueError):
    """Two nodes coincide (to within the distinctness threshold)."""


class NoConvergence(ApoError, RuntimeError):
    """The simultaneous root iteration hit its iteration cap."""


class Degenerate(ApoError):
    """The moment system is not regular, so the plain Prony route fails."""

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or f"degenerate moment system: {reason}")


class NotDegenerate(ApoError, ValueError):
    """A regularization routine received a system whose generating polynomial is non-zero."""


class ExtrapolationUnstable(ApoError, RuntimeError):
    """Successive epsilon levels disagree beyond tolerance."""


class NotEvenCase(ApoError, ValueError):
    """``n - mu * floor(n / mu)`` is odd, so the even-case filter does not apply."""


class UnsupportedFamily(ApoError, ValueError):
    """No closed-form family covers the requested parameters."""

"""Domain error hierarchy shared by all apps.

Every error carries a ``detail`` message and a machine-readable ``code``, the
same ``{"detail": ..., "code": ...}`` payload the command line prints, plus the
process exit code the CLI maps it to.
"""


class MubCorrError(Exception):
    """Base class for all library errors."""

    default_detail = "Library error."
    default_code = "ERROR"
    exit_code = 4

    def __init__(self, detail=None, code=None):
        self.detail = detail if detail is not None else self.default_detail
        self.code = code if code is not None else self.default_code
        super().__init__(self.detail)

    def as_dict(self):
        return {"detail": str(self.detail), "code": self.code}


class InvalidStateError(MubCorrError):
    """A state violates normalisation, hermiticity, trace or positivity."""

    default_detail = "Invalid quantum state."
    default_code = "INVALID_STATE"
    exit_code = 2


class DimensionMismatchError(MubCorrError):
    """Operators, bases or layouts do not fit together."""

    default_detail = "Dimension mismatch."
    default_code = "DIMENSION_MISMATCH"
    exit_code = 2


class InvalidParameterError(MubCorrError):
    """A numeric parameter is outside its documented domain."""

    default_detail = "Parameter out of range."
    default_code = "INVALID_PARAMETER"
    exit_code = 2


class UnsupportedDomainError(MubCorrError):
    """The request is well formed but not supported (e.g. N > 2 MUBs for non-prime d)."""

    default_detail = "Unsupported (d, N) combination."
    default_code = "UNSUPPORTED_DOMAIN"
    exit_code = 3


class NumericalError(MubCorrError):
    """A numerical routine failed (no bracket, no convergence, solver failure)."""

    default_detail = "Numerical failure."
    default_code = "NUMERICAL_FAILURE"
    exit_code = 4


class CertificationError(MubCorrError):
    """A certifier found no certificate. Inconclusive, not a failure of the input."""

    default_detail = "No certificate found."
    default_code = "NOT_CERTIFIED"
    exit_code = 4

    def __init__(self, detail=None, code=None, residuals=None):
        super().__init__(detail, code)
        self.residuals = residuals or {}

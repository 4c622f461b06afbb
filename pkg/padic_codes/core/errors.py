"""Exception hierarchy shared by the library and the CLI."""


class PadicCodesError(Exception):
    """Base class for every error raised by padic_codes."""


class InvalidPrimeError(PadicCodesError, ValueError):
    """A modulus that should be prime is not."""


class PrimeMismatchError(PadicCodesError, ValueError):
    """Operands carry different primes."""


class DimensionMismatchError(PadicCodesError, ValueError):
    """Vectors of different lengths were combined."""


class FormatError(PadicCodesError):
    """Malformed input text; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class ResourceBudgetError(PadicCodesError):
    """An enumeration or search would exceed its configured budget."""


class HenselLiftError(PadicCodesError, ValueError):
    """The residue vector does not satisfy the lifting preconditions."""


class UnsupportedPrimeError(PadicCodesError):
    """The exact solver does not handle this prime."""


class UnboundedSearchError(PadicCodesError):
    """The separation admits codes of every size."""


class CertificateError(PadicCodesError):
    """A certificate cannot be evaluated on the given code."""


class SeparationMismatchError(CertificateError):
    """The certificate was built for a different separation threshold."""


class ConsistencyError(PadicCodesError, AssertionError):
    """An internal identity failed; indicates an implementation bug."""


class QuadratureError(PadicCodesError):
    """Numerical integration did not reach its error target."""


class LinearProgramError(PadicCodesError):
    """A linear program was malformed or ended in an unexpected state."""

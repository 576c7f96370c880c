"""Exception types raised by the ``tps`` package."""


class TPSError(Exception):
    """Base class for all package errors."""


class DomainError(TPSError, ValueError):
    """A parameter lies outside the range where the model is defined."""


class SymmetryError(TPSError, ValueError):
    """A w-domain spectrum is not conjugate-symmetric, so it has no real
    time-domain counterpart."""


class KindError(TPSError, ValueError):
    """Spectra produced by mismatched transforms were combined."""


class ExtrapolationError(TPSError, ValueError):
    """A quantized frequency falls outside the sampled band of a network."""

    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class ParseError(TPSError, ValueError):
    """Malformed Touchstone content."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line

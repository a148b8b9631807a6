"""Exception types shared across the package."""


class DomainError(ValueError):
    """Operation applied outside its mathematical domain (e.g. division by zero)."""


class ParityError(ValueError):
    """Half-power polynomials of different parity were added or subtracted."""


class NotPolynomialError(ValueError):
    """A computation expected to produce a (half-power) polynomial did not."""


class NotRationalError(ValueError):
    """The primitive of a rational function has an unavoidable logarithmic part.

    This is a meaningful outcome, not a bug: it is exactly how terminating
    families announce their end.
    """


class InconsistentError(ValueError):
    """The Wronskian linear system has no polynomial solution.

    Equivalent to a logarithmic obstruction in the underlying integral; a
    sequence hitting this error terminates.
    """


class NumericError(RuntimeError):
    """Floating-point root finding did not converge to the requested accuracy."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial

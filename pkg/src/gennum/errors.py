"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`GenNumError`.
Errors that stem from a failed asymptotic predicate carry the offending
:class:`~gennum.gen_num.Verdict` in ``verdict`` so callers can inspect the
witness indices.
"""


class GenNumError(Exception):
    """Base class for all package errors."""

    def __init__(self, message="", verdict=None):
        super().__init__(message)
        self.verdict = verdict


class GridMismatch(GenNumError):
    """Operands live on different epsilon grids."""


class NotModerate(GenNumError):
    """A net grows faster than every admissible negative power of epsilon."""


class DivisionByNonInvertible(GenNumError):
    """The divisor is not invertible (not strictly nonzero)."""


class NotSymmetricClass(GenNumError):
    """A matrix is not symmetric up to a negligible net."""


class Degenerate(GenNumError):
    """A matrix or form has a non-invertible determinant."""


class NotFree(GenNumError):
    """A vector is not free (its norm is not strictly positive)."""


class CoefficientNotStrictlyNonzero(GenNumError):
    """Exchange coefficient is not strictly nonzero."""


class DegenerateGram(GenNumError):
    """A Gram matrix is degenerate, or the inner product is not positive definite."""


class NotLorentzian(GenNumError):
    """A bilinear form does not have index 1."""


class NotTimeLike(GenNumError):
    """A vector required to be time-like is not."""


class NotUnit(GenNumError):
    """A time-like vector does not have norm -1."""


class NotSameOrientation(GenNumError):
    """Two time-like vectors do not share a time orientation."""


class PointOutsideDomain(GenNumError):
    """A generalized point leaves the chart domain on the tail window."""


class DegenerateAtPoint(GenNumError):
    """A metric field is degenerate at a sampled generalized point."""


class OrientationMismatch(GenNumError):
    """Two vector fields are not both time-like and co-oriented at a point."""


class DimensionTooLarge(GenNumError):
    """The oracle only handles dimensions up to 6."""


class SliceNotLorentzian(GenNumError):
    """A tail slice of a metric is not a classical Lorentz metric."""


class ParseError(GenNumError):
    """Malformed expression or manifest line."""

    def __init__(self, message, line=None, col=None):
        where = ""
        if line is not None:
            where = f"line {line}, col {col}: " if col is not None else f"line {line}: "
        super().__init__(where + message)
        self.line = line
        self.col = col
        self.bare_message = message


class UnknownName(GenNumError):
    """A manifest task or expression references an undefined name."""


class TypeMismatch(GenNumError):
    """A task received an argument of the wrong kind."""


class UnknownDemo(GenNumError):
    """No demo with the requested name."""

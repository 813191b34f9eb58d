"""Exception hierarchy shared by all fraccauchy modules."""


class FracCauchyError(Exception):
    """Base class for every error raised by this package."""


class PoleError(FracCauchyError, ValueError):
    """Gamma evaluated at a non-positive integer."""


class NonConvergence(FracCauchyError, ArithmeticError):
    """An iterative procedure or truncated series did not meet its tolerance."""


class ConvergenceError(NonConvergence):
    """Quadrature rule construction failed to converge."""


class NoConvergence(NonConvergence):
    """Polynomial root iteration did not converge."""


class SearchExhausted(FracCauchyError):
    """No odd/odd fraction within tolerance below the denominator cap."""


class ComplexRootsUnsupported(FracCauchyError):
    """The characteristic polynomial has non-real roots."""


class RepeatedRoots(FracCauchyError):
    """Two characteristic roots coincide (within the separation tolerance)."""


class SingularSystem(FracCauchyError):
    """The Vandermonde system for the mixing coefficients is singular."""


class ZeroBasisValue(FracCauchyError):
    """A basis function vanishes at the base point x0."""

"""Exception types shared across the package."""


class PoleError(ValueError):
    """A gamma function was asked for a value at one of its poles."""


class DomainError(ValueError):
    """A point lies outside the region where the requested expansion converges."""


class DegenerateParameterError(ValueError):
    """Parameters hit a degenerate (logarithmic or vanishing-coefficient) case."""


class ConvergenceError(ArithmeticError):
    """A series or quadrature exhausted its budget before meeting tolerance."""


class QuadratureError(ConvergenceError):
    """Adaptive cubature could not reach the requested tolerance."""

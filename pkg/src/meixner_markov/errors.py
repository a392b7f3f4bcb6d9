"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(ArithmeticError):
    """An iterative procedure (truncated sum, bisection) failed to reach its tolerance."""


class BracketError(ArithmeticError):
    """A root bracket could not be established. Indicates a bug, not bad input."""


class VerificationError(ArithmeticError):
    """A numerical check that is proven to hold came out false."""

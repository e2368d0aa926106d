"""Exception types shared across the package."""


class GlctError(Exception):
    """Base class for all library errors."""


class ValidationError(GlctError, ValueError):
    """Invalid input: sizes, parameters, shapes, ranges, or file contents."""


class NumericalError(GlctError, ArithmeticError):
    """A numerical routine failed to meet its accuracy contract."""

"""Exception types shared across the package."""


class FraclimError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FraclimError):
    """Input lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """Gamma function evaluated at one of its poles (0, -1, -2, ...)."""


class ExprParseError(FraclimError):
    """Expression text that does not match the term grammar."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class UnsupportedProduct(FraclimError):
    """poly_product asked to multiply something that is not a same-center
    integer-power polynomial pair."""


class UnsupportedFunction(FraclimError):
    """A closed-form route was asked for a function it cannot handle."""


class InsufficientData(FraclimError):
    """Too few usable samples to classify a limit scan."""

"""Exception hierarchy shared by the solver modules."""


class DtmmError(Exception):
    """Base class for every error raised by this package."""


class ExpressionSyntaxError(DtmmError):
    """Malformed expression text.

    Attributes:
        offset: byte offset into the source text where parsing failed.
    """

    def __init__(self, message: str, offset: int, text: str = ""):
        self.offset = offset
        self.text = text
        super().__init__(f"{message} at offset {offset}")


class UnknownFunctionError(ExpressionSyntaxError):
    pass


class DomainError(DtmmError, ArithmeticError):
    """An expression was evaluated outside its mathematical domain."""


class QuadratureError(DtmmError):
    """Adaptive quadrature could not reach the requested tolerance."""


class OracleError(DtmmError):
    """The reference integrator failed to converge."""


class BlochError(DtmmError):
    """A one-period transfer matrix is too far from unit determinant."""

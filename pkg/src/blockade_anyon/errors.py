"""Exception hierarchy shared by every module of the package."""


class BlockadeAnyonError(Exception):
    """Base class for all errors raised by this package."""


class ArgumentError(BlockadeAnyonError, ValueError):
    """An argument is outside its documented range."""


class DomainError(BlockadeAnyonError, ValueError):
    """An input is well-formed but not a member of the expected domain
    (illegal basis state, operators on different sectors, non-Hermitian input)."""


class ConstructionError(BlockadeAnyonError):
    """A built operator failed its build-time postcondition.

    Attributes
    ----------
    residual : float
        The norm that exceeded tolerance.
    """

    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class StructureError(BlockadeAnyonError):
    """The algebraic structure found numerically differs from the expected one."""


class CapacityError(BlockadeAnyonError):
    """A dense computation would exceed the configured size ceiling."""


class ConvergenceError(BlockadeAnyonError):
    """An iterative solver did not reach the requested residual."""

    def __init__(self, message, residuals=()):
        super().__init__(message)
        self.residuals = list(residuals)


class DictionaryError(BlockadeAnyonError):
    """An operator identity between the Rydberg and anyon pictures failed."""

    def __init__(self, message, residual=float("nan")):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual

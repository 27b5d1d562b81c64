"""Exception types raised across the package."""


class NHTwistError(Exception):
    pass


class DivergentLimit(NHTwistError, ArithmeticError):
    """A positive power of tau survives the tau -> infinity limit."""


class UndecidedOrder(NHTwistError):
    """The series order needed to decide a limit exceeds the configured bound."""


class UnboundAtom(NHTwistError, KeyError):
    pass


class TruncationNotDetected(NHTwistError):
    def __init__(self, max_order: int):
        super().__init__(f"twist series did not terminate within max_order={max_order}")
        self.max_order = max_order


class InvalidInput(NHTwistError, ValueError):
    """Bad dimension, index choice or parameter array."""

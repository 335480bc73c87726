class CubefvError(Exception):
    pass


class InvalidInputError(CubefvError, ValueError):
    """Arguments violate an operation's preconditions."""


class NonIntegralError(CubefvError, ValueError):
    """An integer result was requested but some entry is a proper fraction."""


class ConsistencyError(CubefvError, AssertionError):
    """An exact self-check failed. Indicates a bug, never bad input."""

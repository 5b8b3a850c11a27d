"""Exception types shared across the package."""


class CyclematchError(Exception):
    pass


class InvalidInputError(CyclematchError, ValueError):
    """Input violates a documented precondition."""


class CapacityError(CyclematchError):
    """A configured size cap was exceeded.

    ``lower`` and ``upper`` carry whatever bounds were known when the cap
    tripped (``None`` when nothing useful is available).
    """

    def __init__(self, message, lower=None, upper=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper

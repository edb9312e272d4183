"""Exception types shared across the package."""


class EmptyConstraint(ValueError):
    """The admissible signal set is empty."""


class InadmissibleSignal(ValueError):
    """A word or periodic signal violates the constraint."""


class BudgetExceeded(RuntimeError):
    """A word-count cap was hit; ``partial`` carries whatever was computed."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial

"""Exception hierarchy shared by every module."""


class DtruncError(Exception):
    """Base class for all library errors."""


class ArgumentError(DtruncError, ValueError):
    """Invalid arguments to a construction (bad dimension, horn index, ...)."""


class ValidationError(DtruncError):
    """Input data violates a structural law (face table, composition, operad axioms)."""


class DomainError(DtruncError):
    """A construction was evaluated outside the inputs it is defined for."""


class BudgetExceeded(DtruncError):
    """A search ran out of its node budget. This is *not* a negative answer."""

    def __init__(self, limit: int, what: str = "search"):
        super().__init__(f"{what} exceeded node budget of {limit}")
        self.limit = limit
        self.what = what


class NotCertified(DtruncError):
    """A target could not be certified as a quasi-category up to the needed dimension."""

    def __init__(self, name: str, bound: int, witness=None):
        super().__init__(f"{name or 'simplicial set'} is not a quasi-category up to dimension {bound}")
        self.bound = bound
        self.witness = witness

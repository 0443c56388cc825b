"""Exception and warning types shared across the package."""


class ConformableError(Exception):
    """Base class for all numerical failures raised by this package."""


class NonConvergence(ConformableError):
    pass


class NonFinite(ConformableError, ArithmeticError):
    pass


class NoSignChange(ConformableError, ValueError):
    pass


class PoleError(ConformableError, ValueError):
    pass


class DomainError(ConformableError, ValueError):
    pass


class UnmatchedCase(ConformableError, ValueError):
    pass


class Divergent(ConformableError):
    pass


class NotExplicit(ConformableError, TypeError):
    pass


class UnknownEntry(ConformableError, KeyError):
    pass


class DegenerateRoot(ConformableError, ValueError):
    pass


class DivisionNearZero(ConformableError, ZeroDivisionError):
    pass


class TruncationWarning(UserWarning):
    """A basis-truncated sum has not visibly converged."""


class NormalizationWarning(UserWarning):
    """A closed-form normalization disagrees with its numerical check."""

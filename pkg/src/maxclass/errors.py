"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad parameters: out-of-range n, mismatched contexts, bad flags."""


class NotAUnitError(ArithmeticError):
    """Raised when an operation needs a normalized unit (augmentation 1)."""


class UnsupportedInvolutionError(UsageError):
    """The circledast involution only exists for n >= 3."""


class UndefinedDegreeError(ArithmeticError):
    """Zero has no filtration degree."""


class BudgetError(RuntimeError):
    """Requested computation exceeds the exhaustive-enumeration cap."""


class NoClosedFormError(UsageError):
    """No closed-form order is known for this subgroup kind."""

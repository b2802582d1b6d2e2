"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class DegenerateInputError(ValueError):
    """Input data cannot support the computation (e.g. zero variance)."""


class ConvergenceError(RuntimeError):
    """An iterative scheme hit its iteration cap before converging."""


class EmptySliceError(ValueError):
    """A cloud slice selected no records."""


class BudgetError(RuntimeError):
    """A simulation request exceeds the configured observation budget."""

"""Shared exception types."""


class FieldMismatch(ValueError):
    """Operands live over different fields."""


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} points, budget is {budget}")
        self.needed = needed
        self.budget = budget

"""Exception types shared across the package.

The CLI maps these onto its exit codes: configuration/precondition problems
exit with 1, violated numerical invariants with 2.
"""


class ValidationError(ValueError):
    """Invalid argument, configuration field, or violated precondition."""


class NumericalInvariantError(ArithmeticError):
    """A runtime numerical check failed (norm drift, eigenvalue out of range)."""

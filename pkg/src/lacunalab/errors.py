"""Exception types shared across the package.

The CLI maps these onto exit codes: parameter/usage problems exit 2,
failed verdicts exit 1.
"""


class CatalogError(ValueError):
    """Requested group is not in the catalog."""


class DomainError(ValueError):
    """An argument is outside the operation's domain (wrong rank, not a root, ...)."""


class ParameterError(ValueError):
    """A numeric parameter violates its precondition (Q <= 1, grid too coarse, ...)."""


class ConsistencyError(RuntimeError):
    """An internal exactness contract was violated; signals a bug, never expected."""

"""Shared exception types.

Every error that can escape the library carries a short machine-readable
code so the CLI can map it onto an exit status (config -> 2, budget -> 3).
"""


class FrobkernError(Exception):
    """Base class for all library errors."""

    code = "error"


class ConfigError(FrobkernError):
    """Invalid configuration: unsupported type, bad rank, p out of range."""

    code = "config"


class DomainError(FrobkernError):
    """An argument is outside the mathematical domain of the operation."""

    code = "domain"


class UnsupportedOperationError(FrobkernError):
    """The requested operation is outside the implemented fragment."""

    code = "unsupported"


class BudgetError(FrobkernError):
    """An enumeration exceeded the configured resource budget."""

    code = "budget"


class CheckFailure(FrobkernError):
    """An internal consistency check (e.g. map well-definedness) failed."""

    code = "check"

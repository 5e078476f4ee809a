"""frobkern: exact models, varieties and spectral-sequence data for
Frobenius kernels of unipotent algebraic groups over F_p (p odd)."""

from . import commvar, grmodel, polyalg, rootsys, specseq, verify  # noqa: F401
from .errors import (  # noqa: F401
    BudgetError,
    CheckFailure,
    ConfigError,
    DomainError,
    FrobkernError,
    UnsupportedOperationError,
)

__version__ = "0.1.0"

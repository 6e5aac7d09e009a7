"""Finite simplicial sets, d-homotopy categories and d-operads, checked at desk scale."""

from .errors import ArgumentError, BudgetExceeded, DomainError, DtruncError, NotCertified, ValidationError
from .sset import SMap, SSet, SimplexRef

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "BudgetExceeded",
    "DomainError",
    "DtruncError",
    "NotCertified",
    "SMap",
    "SSet",
    "SimplexRef",
    "ValidationError",
]

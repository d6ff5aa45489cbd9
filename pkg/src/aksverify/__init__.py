"""AKS primality testing with executable checks of its correctness argument."""

from .aks import AksTrace, Verdict, aks_is_prime, is_prime
from .errors import DomainError, ModulusMismatchError, NotCoprimeError, PropertyViolation
from .polyring import ModPoly, QuotientField

__all__ = [
    "AksTrace",
    "DomainError",
    "ModPoly",
    "ModulusMismatchError",
    "NotCoprimeError",
    "PropertyViolation",
    "QuotientField",
    "Verdict",
    "aks_is_prime",
    "is_prime",
]

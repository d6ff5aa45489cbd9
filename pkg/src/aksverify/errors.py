from __future__ import annotations


class DomainError(ValueError):
    """An argument lies outside the domain where the operation is defined."""


class NotCoprimeError(DomainError):
    pass


class ModulusMismatchError(ValueError):
    pass


class PropertyViolation(AssertionError):
    """A property that the AKS correctness argument guarantees was observed to fail.

    Raised instead of silently returning, since it means either a bug here or a
    counterexample to a proved statement.
    """

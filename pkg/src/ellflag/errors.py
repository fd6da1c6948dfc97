"""Exception hierarchy shared by all modules.

Three failure families, matching the CLI exit codes: bad input (2),
enumeration cap exceeded (3), and internal identity-check failure (4).
"""

from __future__ import annotations


class ValidationError(ValueError):
    """Raised when input data violates a documented precondition."""


class CapExceededError(RuntimeError):
    """Raised when an enumeration would exceed the configured cap."""


class IdentityCheckError(RuntimeError):
    """Raised when a supposedly provable identity fails at runtime.

    Signals an implementation bug, never bad input; carries a structured
    counterexample in ``details`` when one is available.
    """

    def __init__(self, message: str, details: object = None) -> None:
        super().__init__(message)
        self.details = details

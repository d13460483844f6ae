"""
errors.py
Exception hierarchy shared by the library and the CLI.

The CLI maps every LoccError to an exit code:
  InputError          → 2   (bad files, bad parameters, infeasible targets)
  InvariantViolation  → 3   (a result failed its own re-check)

Any other exception escaping a command is reported as an InvariantViolation.
"""
from typing import Optional


class LoccError(Exception):
    """Base class for every error raised by locc_ops."""

    exit_code = 1

    def __init__(self, message: str, location: Optional[str] = None):
        super().__init__(message)
        self.message  = message
        self.location = location

    def __str__(self) -> str:
        if self.location:
            return f"{self.message} (at {self.location})"
        return self.message


class InputError(LoccError):
    exit_code = 2


class DimensionMismatch(InputError, ValueError):
    """Vectors or matrices of incompatible dimension were combined."""


class ParameterError(InputError, ValueError):
    """A constructor precondition was violated (zero parameter, non-orthogonal pair, ...)."""


class GenerationError(InputError):
    """The random realizer could not hit the target graph within its retry budget."""


class InvariantViolation(LoccError):
    exit_code = 3

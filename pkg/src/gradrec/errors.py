"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (e.g. ``"too-coarse"``,
``"singular-system"``) so the CLI can emit stable one-line diagnostics.
"""


class Error(Exception):
    """Base class for all gradrec errors."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.message = message


class InputError(Error, ValueError):
    """Invalid argument, spec string, or precondition violation."""


class NumericalError(Error, RuntimeError):
    """A numerical procedure failed (e.g. a singular linear system)."""

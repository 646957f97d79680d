"""Exception types shared across the package."""


class HLCError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(HLCError, ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


class ProfileError(HLCError, ValueError):
    """A hierarchy profile or construction spec violates its validity rules."""


class CapExceededError(HLCError):
    """A brute-force search would exceed the configured size cap."""


class ConstructionError(HLCError):
    """An internal consistency check failed while assembling a code."""


class UnrecoverableError(HLCError):
    """Erased symbols cannot be recovered from the surviving ones."""

    def __init__(self, message, stuck=()):
        super().__init__(message)
        self.stuck = sorted(stuck)

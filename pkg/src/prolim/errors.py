"""Exception types shared across the package."""


class ProlimError(Exception):
    """Base class for package errors."""


class InputError(ProlimError):
    """Malformed or inconsistent user-supplied data (CLI exit code 2)."""


class PreconditionError(ProlimError):
    """A mathematical precondition was violated (CLI exit code 3)."""


class EnumerationCapExceeded(PreconditionError):
    """An exhaustive enumeration would exceed the configured cap."""

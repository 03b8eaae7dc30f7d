"""Exception hierarchy. The CLI maps these onto exit codes."""


class HellyError(Exception):
    """Base class for all library errors."""


class InputError(HellyError, ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


class DimensionMismatch(InputError):
    pass


class PreconditionError(InputError):
    """An operation was called outside the domain where its answer is exact."""


class ResourceCapExceeded(HellyError):
    """A configured size cap would be exceeded (CLI exit code 3)."""


class EngineDisagreement(HellyError):
    """The two intersection algorithms disagreed. Always a bug."""

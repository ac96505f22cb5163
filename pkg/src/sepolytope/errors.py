"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class SepError(Exception):
    """Base class for all library errors."""

    exit_code = 2


class ParseError(SepError):
    """Malformed graph text."""


class GraphValidationError(SepError):
    """Structurally invalid graph (loop, duplicate edge, out-of-range vertex)."""


class PreconditionError(SepError):
    """An operation was called on an input outside its domain."""


class NoPathError(PreconditionError):
    """The two vertices lie in different components."""


class ResourceError(SepError):
    """A configured safety ceiling was exceeded."""

    exit_code = 3


class IdentityFailure(SepError):
    """Two routes that must agree produced different values."""

    exit_code = 1

"""Exception types shared across the toolkit."""


class TopickitError(Exception):
    """Base class for all toolkit errors."""


class ParseError(TopickitError):
    """Input file could not be parsed (carries file context such as line numbers)."""


class ValidationError(TopickitError):
    """Input violated a structural invariant (bad shape, bad value, duplicate id)."""


class AlignmentError(TopickitError):
    """Two inputs that must describe the same documents disagree (row counts, ids)."""


class DiagnosticError(TopickitError):
    """A computation is impossible on this input in a way the caller should inspect,
    e.g. no topic keyword has a word vector."""

"""Exception hierarchy shared by every module."""


class TessellataError(Exception):
    """Base class for all library errors."""


class DomainError(TessellataError, ValueError):
    """An argument lies outside the domain of an operation."""


class ParseError(DomainError):
    """Malformed text input. ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class SearchLimitError(TessellataError):
    """An exhaustive search was asked to run past its configured bound."""


class InvariantError(TessellataError):
    """A constructed object violates an invariant it must hold by construction."""


class CapacityError(TessellataError):
    """An exporter ran out of a finite resource (e.g. MIDI channels)."""

"""Exception hierarchy shared by all gpcp modules."""


class GpcpError(ValueError):
    """Base class for user-facing data and validation errors."""


class DataError(GpcpError):
    """Malformed or unsupported input data."""

    def __init__(self, message, row=None, column=None):
        where = []
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column!r}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.row = row
        self.column = column


class SpecError(GpcpError):
    """Invalid axis expression or an expression that does not fit the data."""


class StyleError(GpcpError):
    """Rendering parameters that cannot be honoured."""


class LayoutInvariantError(RuntimeError):
    """Raised when an internal layout invariant is violated (a bug, not bad input)."""

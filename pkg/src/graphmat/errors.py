"""Exception hierarchy shared by all graphmat modules."""


class GraphMatError(Exception):
    """Base class for all graphmat errors."""


class DomainError(GraphMatError):
    """A scalar value is outside its declared domain, or two operands
    belong to different domains."""


class DimensionError(GraphMatError):
    """Matrix dimensions do not satisfy an operation's contract."""

    def __init__(self, message, expected=None, actual=None):
        if expected is not None or actual is not None:
            message = f"{message} (expected {expected}, got {actual})"
        super().__init__(message)
        self.expected = expected
        self.actual = actual


class IndexBoundsError(GraphMatError):
    """An index is outside the dimension it is checked against."""


class FormatError(GraphMatError):
    """A file could not be parsed; carries file and line context."""

    def __init__(self, message, path=None, line=None):
        prefix = ""
        if path is not None:
            prefix = f"{path}:{line}: " if line is not None else f"{path}: "
        super().__init__(prefix + message)
        self.path = path
        self.line = line

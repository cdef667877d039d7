"""Exception hierarchy shared by every flatknot module."""


class FlatKnotError(Exception):
    """Base class for all library errors."""


class GeometryError(FlatKnotError, ValueError):
    pass


class ZeroTurn(GeometryError):
    """Raised when a vertex does not turn, so no fold mirror exists."""


class CollinearOverlap(GeometryError):
    """Raised when two segments share more than one point."""


class InvalidCore(GeometryError):
    """A core curve violates one of its structural invariants."""


class InvalidWeaving(GeometryError):
    """A weaving does not match the geometric crossings of its core."""


class InvalidTruncation(GeometryError):
    pass


class ModeMismatch(FlatKnotError, ValueError):
    """Length mode incompatible with the core (closed vs truncated)."""


class NoPositiveWidth(FlatKnotError, ArithmeticError):
    """Admissibility fails even at the smallest probe width."""


class ParseError(FlatKnotError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


class ValidationError(FlatKnotError):
    def __init__(self, message, field=None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)

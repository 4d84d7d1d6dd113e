"""Exception types shared across the package."""


class FcnError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FcnError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        loc = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{loc}")


class UnknownName(FcnError):
    pass


class UnknownCell(FcnError):
    pass


class CompositionMismatch(FcnError):
    def __init__(self, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(f"composition mismatch: expected {expected}, found {found}")


class IllTypedValue(FcnError):
    pass


class NotEnumerable(FcnError):
    pass


class NotAStar(FcnError):
    pass


class BoundaryMismatch(FcnError):
    def __init__(self, site, expected, found):
        self.site = site
        self.expected = expected
        self.found = found
        super().__init__(f"boundary mismatch at {site}: expected {expected}, found {found}")


class IllTypedSubterm(FcnError):
    pass


class NotSquare(FcnError):
    pass


class InfiniteRecvCarrier(FcnError):
    pass


class ScriptUnderrun(FcnError):
    pass


class ScriptOverrun(FcnError):
    pass


class WrongMove(FcnError):
    def __init__(self, expected_kind, got):
        self.expected_kind = expected_kind
        self.got = got
        super().__init__(f"wrong script move: expected {expected_kind}, got {got}")


class DepthExceeded(FcnError):
    pass

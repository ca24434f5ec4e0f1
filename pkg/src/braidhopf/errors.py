"""Exception hierarchy shared by every braidhopf module."""


class BraidHopfError(Exception):
    pass


class DimensionMismatch(BraidHopfError, ValueError):
    pass


class FieldMismatch(BraidHopfError, ValueError):
    pass


class NoSolution(BraidHopfError):
    pass


class NotInvertible(BraidHopfError):
    pass


class FormatError(BraidHopfError, ValueError):
    """Malformed serialized input (scalar string, matrix shape, JSON layout)."""


class BundleError(FormatError):
    """A HopfBundle violates a load-time invariant."""


class NoAntipode(BraidHopfError):
    pass


class PreconditionFailed(BraidHopfError):
    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class UnknownIndex(BraidHopfError, KeyError):
    pass


class UnknownMap(BraidHopfError, KeyError):
    pass

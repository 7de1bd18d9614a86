"""Exception hierarchy shared by every module."""


class CutHilbertError(Exception):
    """Base class for all errors raised by this package."""


class LoopRejected(CutHilbertError, ValueError):
    pass


class BadIndex(CutHilbertError, IndexError):
    pass


class BadCount(CutHilbertError, ValueError):
    pass


class UnknownName(CutHilbertError, KeyError):
    pass


class NotAClique(CutHilbertError, ValueError):
    pass


class SizeMismatch(CutHilbertError, ValueError):
    pass


class DimensionMismatch(CutHilbertError, ValueError):
    pass


class BudgetExceeded(CutHilbertError, RuntimeError):
    pass


class NotSimple(CutHilbertError, ValueError):
    pass


class NotK5(CutHilbertError, ValueError):
    pass


class NotInCone(CutHilbertError, ValueError):
    pass


class NotPointed(CutHilbertError, ValueError):
    pass


class PreconditionFailed(CutHilbertError, ValueError):
    pass


class UnknownCase(CutHilbertError, KeyError):
    pass


class ParseError(CutHilbertError, ValueError):
    pass

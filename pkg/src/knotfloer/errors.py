"""Exception types raised across the package."""


class KnotFloerError(Exception):
    pass


class InvalidTorusParams(KnotFloerError, ValueError):
    pass


class NotReal(KnotFloerError, ValueError):
    pass


class NotAdmissible(KnotFloerError, ValueError):
    """The Alexander polynomial vanishes at exp(4 pi i alpha)."""

    def __init__(self, message, jumps=()):
        super().__init__(message)
        self.jumps = list(jumps)


class JumpPoint(KnotFloerError, ValueError):
    pass


class DegenerateRoot(KnotFloerError, ArithmeticError):
    pass


class UncertifiedRank(KnotFloerError, ArithmeticError):
    pass


class NonIntegralCount(KnotFloerError, ArithmeticError):
    pass


class AlphaMismatch(KnotFloerError, ValueError):
    pass


class NotAUnit(KnotFloerError, ArithmeticError):
    pass


class Truncated(KnotFloerError, ValueError):
    pass


class FieldMismatch(KnotFloerError, ValueError):
    pass


class InconsistentH(KnotFloerError, ArithmeticError):
    pass


class BoundaryOnCut(KnotFloerError, ValueError):
    pass


class NonIntegralIndex(KnotFloerError, ArithmeticError):
    pass


class NonIntegral(KnotFloerError, ArithmeticError):
    pass


class CorruptRecord(KnotFloerError, ValueError):
    pass

"""Exception hierarchy. Every error raised by the package derives from SepcheckError."""


class SepcheckError(Exception):
    pass


class DimensionMismatch(SepcheckError, ValueError):
    pass


class WrongDims(DimensionMismatch):
    """Operation defined only for particular subsystem dimensions."""


class NotHermitian(SepcheckError, ValueError):
    pass


class NoConvergence(SepcheckError, ArithmeticError):
    pass


class InvalidState(SepcheckError, ValueError):
    """Matrix fails density-matrix validation (shape, Hermiticity, trace, positivity)."""


class NotNormalized(InvalidState):
    pass


class BadWeights(SepcheckError, ValueError):
    pass


class BadParameters(SepcheckError, ValueError):
    pass


class InvalidAlpha(SepcheckError, ValueError):
    pass


class StatePPT(SepcheckError):
    """The state has a positive partial transpose, so no eigenvector witness exists."""


class ParseError(SepcheckError, ValueError):
    pass

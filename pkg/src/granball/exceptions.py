"""Exception hierarchy shared by every module in the package."""


class GranularBallError(Exception):
    """Base class for all errors raised by granball."""


class EmptyBall(GranularBallError, ValueError):
    pass


class BadIndex(GranularBallError, IndexError):
    pass


class DimMismatch(GranularBallError, ValueError):
    pass


class TooSmallToSplit(GranularBallError, ValueError):
    pass


class DegenerateSplit(GranularBallError, ValueError):
    pass


class TooFewBalls(GranularBallError, ValueError):
    pass


class TooFewPoints(GranularBallError, ValueError):
    pass


class DegenerateGeometry(GranularBallError, ValueError):
    pass


class NotSymmetric(GranularBallError, ValueError):
    pass


class EigFailed(GranularBallError, ArithmeticError):
    pass


class LengthMismatch(GranularBallError, ValueError):
    pass


class UnknownShape(GranularBallError, ValueError):
    pass


class IoError(GranularBallError, OSError):
    pass


class ParseError(GranularBallError, ValueError):
    """Malformed input file; ``row`` and ``col`` are 0-based when known."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class RaggedRows(ParseError):
    pass

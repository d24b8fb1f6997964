"""Exception hierarchy shared by all modules."""


class FractalError(ValueError):
    """Base class for every error raised by bernfractal."""


class DegenerateTriangle(FractalError):
    pass


class OutOfDomain(FractalError):
    pass


class UnsupportedDegree(FractalError):
    pass


class InvalidScaling(FractalError):
    pass


class TooFewPoints(FractalError):
    pass


class InvalidEpsilon(FractalError):
    pass


class NotHyperbolic(FractalError):
    pass


class SingularDenominator(FractalError):
    pass


class InvalidSubdivision(FractalError):
    pass


class ShapeMismatch(FractalError):
    pass


class NoConvergence(FractalError):
    pass


class ParseError(FractalError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if path is not None:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnsortedInput(FractalError):
    pass


class VertexMismatch(FractalError):
    pass

"""Exception hierarchy shared by all modules.

Every error raised on bad input derives from :class:`GorensteinError`, which
is itself a ``ValueError`` so callers can catch either.
"""


class GorensteinError(ValueError):
    """Base class for input and consistency errors."""


class ParseError(GorensteinError):
    pass


class NotHomogeneous(GorensteinError):
    def __init__(self, degree_a, degree_b):
        super().__init__(
            f"form is not homogeneous: found monomials of degree {degree_a} and {degree_b}"
        )
        self.degrees = (degree_a, degree_b)


class VariableMismatch(GorensteinError):
    pass


class ArityMismatch(GorensteinError):
    pass


class NonPolynomialResult(GorensteinError):
    pass


class DegreeOutOfRange(GorensteinError):
    pass


class DegreeTooSmall(GorensteinError):
    pass


class DegreeMismatch(GorensteinError):
    pass


class ZeroForm(GorensteinError):
    pass


class SingularBasis(GorensteinError):
    pass


class InconsistentSystem(GorensteinError):
    pass


class InvalidInput(GorensteinError):
    pass


class LengthMismatch(GorensteinError):
    pass


class NotSquare(GorensteinError):
    pass


class NotPerazzoShape(GorensteinError):
    pass


class LinearlyDependent(GorensteinError):
    pass


class IsCone(GorensteinError):
    pass


class InvalidParams(GorensteinError):
    pass


class RelationNotFound(GorensteinError):
    def __init__(self, max_degree):
        super().__init__(f"no algebraic relation among the partials up to degree {max_degree}")
        self.max_degree = max_degree


class RelationInvalid(GorensteinError):
    pass


class PivotZero(GorensteinError):
    pass

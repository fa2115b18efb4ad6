"""Exception types raised across the package."""


class LevelBoundError(Exception):
    """Base class for all errors raised by levelbound."""


class NotMonic(LevelBoundError, ValueError):
    pass


class Reducible(LevelBoundError, ValueError):
    """The defining polynomial factors; ``witness`` is a proper factor."""

    def __init__(self, poly, witness):
        self.poly = poly
        self.witness = witness
        super().__init__(f"{poly} is reducible over Q, divisible by {witness}")


class DegreeUnsupported(LevelBoundError, ValueError):
    pass


class UnsupportedDegree(LevelBoundError, ValueError):
    pass


class IndexDivisor(LevelBoundError, ValueError):
    """p divides the index of Z[theta] in the maximal order."""


class DiscUncertain(LevelBoundError, ValueError):
    """The field discriminant is only known up to an interval."""

    def __init__(self, message, bounds=None):
        self.bounds = bounds
        super().__init__(message)


class DegreeMismatch(LevelBoundError, ValueError):
    pass


class DenominatorPrimeTooLarge(LevelBoundError, ValueError):
    def __init__(self, prime, bound):
        self.prime = prime
        self.bound = bound
        super().__init__(f"denominator prime {prime} exceeds prime_bound {bound}")


class SingularCurve(LevelBoundError, ValueError):
    pass


class BadReduction(LevelBoundError, ValueError):
    pass


class PrimeTooLarge(LevelBoundError, ValueError):
    pass


class UnsupportedPrime(LevelBoundError, ValueError):
    pass


class FieldTooLarge(LevelBoundError, ValueError):
    pass


class ParseError(LevelBoundError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class DuplicateLabel(LevelBoundError, ValueError):
    def __init__(self, label, line):
        self.label = label
        self.line = line
        super().__init__(f"line {line}: duplicate label {label!r}")

"""Exception hierarchy shared by all modules."""


class WeylError(Exception):
    """Base class for every error raised by this package."""


# coefficients
class MixedRings(WeylError, TypeError):
    pass


class DivisionByZero(WeylError, ZeroDivisionError):
    pass


class NonInvertible(WeylError, ArithmeticError):
    pass


class NotDivisible(WeylError, ArithmeticError):
    pass


# algebra
class SignatureMismatch(WeylError, ValueError):
    pass


class NegativeExponent(WeylError, ValueError):
    pass


class UnsupportedRing(WeylError, ValueError):
    pass


# endomorphisms
class RelationViolated(WeylError):
    """One or more defining relations fail for a proposed set of images.

    ``violations`` is a list of ``(i, j, value, expected)``: 1-based
    generator indices, the computed ``[img_i, img_j]`` and the scalar the
    relation demands.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        parts = [f"[x{i}, x{j}] = {v} != {e}" for i, j, v, e in self.violations]
        super().__init__("relations violated: " + "; ".join(parts))


class NotValidated(WeylError):
    pass


class IndexOutOfRange(WeylError, IndexError):
    pass


class NotScalar(WeylError):
    pass


class NonTerminating(WeylError):
    pass


class VerificationFailed(WeylError):
    pass


class BoundViolated(WeylError, AssertionError):
    pass


class UnsupportedCentralMap(WeylError, NotImplementedError):
    pass


# characteristic p
class NotCentralInput(WeylError, ValueError):
    pass


class CenterNotPreserved(WeylError):
    def __init__(self, index, remainder):
        self.index = index
        self.remainder = remainder
        super().__init__(f"image of x{index}^p is not central: {remainder}")


# matrices
class DimensionMismatch(WeylError, ValueError):
    pass


class IdentityFailed(WeylError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


class DeterminantNotUnit(WeylError):
    def __init__(self, message, report=None):
        self.report = report
        super().__init__(message)


# parsing
class ParseError(WeylError, SyntaxError):
    def __init__(self, message, offset):
        self.pos = offset
        super().__init__(f"{message} at offset {offset}")


class UnknownVariable(ParseError):
    pass


class ExponentTooLarge(ParseError):
    pass

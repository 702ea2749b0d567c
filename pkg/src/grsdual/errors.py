"""Exception hierarchy shared by every module of the package."""


class GrsDualError(Exception):
    """Base class for all library errors."""


# field
class NotPrime(GrsDualError, ValueError):
    pass


class FieldTooLarge(GrsDualError, ValueError):
    pass


class ContextMismatch(GrsDualError, TypeError):
    pass


class DivisionByZero(GrsDualError, ZeroDivisionError):
    pass


class ZeroArgument(GrsDualError, ValueError):
    pass


class NotASquare(GrsDualError, ValueError):
    pass


class NotADivisor(GrsDualError, ValueError):
    pass


# grs
class DuplicatePoints(GrsDualError, ValueError):
    pass


class ZeroScaling(GrsDualError, ValueError):
    pass


class BadDimension(GrsDualError, ValueError):
    pass


class LengthMismatch(GrsDualError, ValueError):
    pass


class InfinityInSet(GrsDualError, ValueError):
    pass


class InfinityUnsupported(GrsDualError, ValueError):
    pass


class NotAMember(GrsDualError, ValueError):
    pass


class TooLarge(GrsDualError, ValueError):
    pass


class TooManyErasures(GrsDualError, ValueError):
    pass


class InconsistentWord(GrsDualError, ValueError):
    pass


# selfdual
class CharactersNotEqual(GrsDualError, ValueError):
    pass


class NegCharacterNotSquare(GrsDualError, ValueError):
    pass


class OddLength(GrsDualError, ValueError):
    pass


class EvenLength(GrsDualError, ValueError):
    pass


class OddN(GrsDualError, ValueError):
    pass


class InternalVerificationFailed(GrsDualError, AssertionError):
    """A construction produced something its own certificate rejects (a bug)."""


# constructions
class InvalidParams(GrsDualError, ValueError):
    pass


class CaseConditionViolated(GrsDualError, ValueError):
    pass


# mobius
class NotSelfDual(GrsDualError, ValueError):
    pass


class NoInfinity(GrsDualError, ValueError):
    pass


class FullProjectiveLine(GrsDualError, ValueError):
    pass


class MalformedDescriptor(GrsDualError, ValueError):
    pass


class SingularTransform(GrsDualError, ValueError):
    pass

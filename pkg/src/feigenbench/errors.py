"""Exception hierarchy shared by all feigenbench modules."""


class FeigenbenchError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class InvalidInput(FeigenbenchError, ValueError):
    pass


class Overflow(FeigenbenchError, ArithmeticError):
    pass


class NoConvergence(FeigenbenchError, ArithmeticError):
    """Newton iteration failed; ``last`` holds the final iterate if any."""

    def __init__(self, message, last=None, stalled=False):
        super().__init__(message)
        self.last = last
        self.stalled = stalled


class DerivativeVanished(NoConvergence):
    pass


class WrongPeriod(FeigenbenchError):
    def __init__(self, message, found=None, exact_period=None):
        super().__init__(message)
        self.found = found
        self.exact_period = exact_period


class CycleCollision(FeigenbenchError):
    pass


class CycleUnavailable(FeigenbenchError):
    pass


class BranchLost(FeigenbenchError):
    """Continuation along the copy sequence landed on an incompatible copy."""


class CacheCorrupt(FeigenbenchError):
    pass


class OrbitEscaped(FeigenbenchError):
    pass


class SelfIntersection(FeigenbenchError):
    pass


class TraceDiverged(FeigenbenchError):
    pass


class NotClosed(FeigenbenchError):
    pass


class NotCompactlyContained(FeigenbenchError):
    pass


class InvalidStart(FeigenbenchError, ValueError):
    pass


class EmptyDomain(FeigenbenchError):
    pass


class NotInformative(FeigenbenchError):
    pass


class BracketFailure(FeigenbenchError):
    pass


class OrbitDegenerate(FeigenbenchError):
    pass


class NotHomeomorphism(FeigenbenchError):
    pass


class TooFewEntries(FeigenbenchError, ValueError):
    pass


class DegenerateWindow(FeigenbenchError, ValueError):
    pass


class DivisionByZero(FeigenbenchError, ZeroDivisionError):
    """Ratio with a denominator interval identically zero."""

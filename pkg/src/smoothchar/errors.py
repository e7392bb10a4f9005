"""Exception types raised across the package."""


class SmoothCharError(ValueError):
    """Base class for all domain errors."""


class NotSquarefree(SmoothCharError):
    pass


class NotCoprime(SmoothCharError):
    pass


class NotPrimitive(SmoothCharError):
    pass


class BadFactor(SmoothCharError):
    """Raised when u*v does not reproduce the modulus (or gcd(u, v) > 1)."""


class LengthExceedsModulus(SmoothCharError):
    pass


class OutOfRange(SmoothCharError):
    pass


class BadWord(SmoothCharError):
    pass


class Degenerate(SmoothCharError):
    pass


class Infeasible(SmoothCharError):
    """No prime assignment meets every slot window.

    ``best`` holds the closest attempt found (a FactorizationPlan), if any.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best

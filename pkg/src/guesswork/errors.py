"""Exception types raised by the guesswork package."""


class GuessworkError(ValueError):
    """Base class for every error raised by this package."""


class NonPositiveWeight(GuessworkError):
    pass


class TooSmallAlphabet(GuessworkError):
    pass


class AlphabetMismatch(GuessworkError):
    pass


class AmbiguousDistribution(GuessworkError):
    """The distribution has a tied most- or least-likely symbol."""


class OrderIsOne(GuessworkError):
    pass


class DegenerateBase(GuessworkError):
    pass


class DomainError(GuessworkError):
    pass


class NoConvergence(GuessworkError):
    pass


class HypothesisViolated(GuessworkError):
    """The projection of the source onto the model's tilted family is not a positive tilt."""


class NonPositiveRho(GuessworkError):
    pass


class TooLarge(GuessworkError):
    """The requested exhaustive computation exceeds the configured size guard."""


class BadRank(GuessworkError):
    pass

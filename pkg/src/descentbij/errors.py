"""Exception types shared across the library.

Parse failures are subclasses of ParseError so callers can catch the family
with one handler while tests can pin the specific condition.
"""


class ParseError(ValueError):
    """Malformed permutation or pattern text."""


class MalformedToken(ParseError):
    """A token is not a positive decimal integer."""


class RepeatedValue(ParseError):
    """The same value occurs twice, so the input is not a bijection."""


class ValueOutOfRange(ParseError):
    """A value lies outside 1..n for the given length n."""


class EmptyInput(ValueError):
    """An operation that needs at least one entry was given none."""


class BadParameter(ValueError):
    """A structural parameter (typically k) is out of its allowed range."""


class InputContainsPattern(ValueError):
    """A map was applied to a permutation outside its domain.

    Carries the offending pattern label and a witness occurrence
    (1-based positions) when one is available.
    """

    def __init__(self, label: str, occurrence=None):
        self.label = label
        self.occurrence = tuple(occurrence) if occurrence else None
        where = f" at positions {self.occurrence}" if self.occurrence else ""
        super().__init__(f"input contains {label}{where}")


class InternalExhaustion(RuntimeError):
    """The refill procedure ran out of eligible values.

    Cannot happen for inputs satisfying the documented preconditions; raised
    instead of silently producing garbage.
    """


class SelectionMismatch(ValueError):
    """A step was invoked with a selection not reproducible from its input."""


class NonTermination(RuntimeError):
    """An iterated rewrite exceeded its n^2 + 1 step guard."""


class HypothesisViolation(ValueError):
    """The standing hypothesis of the reverse rewrite protocol failed.

    The input has an H- or Q-occurrence lying strictly above the row of the
    selected square, which the protocol's domain excludes.
    """

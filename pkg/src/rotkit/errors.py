"""Exception hierarchy.

Every contract violation raised by the library derives from
:class:`RotkitError`, which is a :class:`ValueError` so callers that only
care about "bad input" can catch that.
"""


class RotkitError(ValueError):
    """Base class for all library errors."""


class ParseError(RotkitError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at byte offset {offset}")
        self.offset = offset


class IllegalRotation(RotkitError):
    pass


class IndexOutOfRange(RotkitError):
    pass


class SizeMismatch(RotkitError):
    pass


class EmptyTree(RotkitError):
    pass


class NotAPermutation(RotkitError):
    pass


class NotATreePermutation(RotkitError):
    pass


class NotSkew(RotkitError):
    pass


class MalformedString(RotkitError):
    pass


class LengthMismatch(RotkitError):
    pass


class BadIndices(RotkitError):
    pass


class RankTooLow(RotkitError):
    pass


class TooLarge(RotkitError):
    pass


class FilterViolatedAtEndpoint(RotkitError):
    pass


class NegativeCoefficient(RotkitError):
    pass


class NotSkewPolynomial(RotkitError):
    pass


class DegreeMismatch(RotkitError):
    pass


class NotAngleNode(RotkitError):
    pass

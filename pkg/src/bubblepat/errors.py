"""Exception types raised by bubblepat."""

from __future__ import annotations


class BubblePatError(Exception):
    """Base class for every error raised by this package."""


class ParseError(BubblePatError, ValueError):
    """Malformed permutation or chain text.

    ``position`` is the 1-based index of the offending token (or character,
    for digit strings), when known.
    """

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DuplicateValue(ParseError):
    pass


class OutOfRange(ParseError):
    pass


class EmptyTokenStream(ParseError):
    pass


class EmptyPermutation(BubblePatError, ValueError):
    pass


class EndsWithMax(BubblePatError, ValueError):
    pass


class WrongCase(BubblePatError, ValueError):
    """A construction was asked for a permutation outside its case."""


class IsGoodPermutation(BubblePatError, ValueError):
    pass


class ContainsBadPermutation(BubblePatError, ValueError):
    def __init__(self, perm: tuple[int, ...]):
        from bubblepat.perm import format_perm

        super().__init__(f"{format_perm(perm)} is not a good permutation")
        self.perm = perm


class HorizonExceeded(BubblePatError, ValueError):
    def __init__(self, requested: int, cap: int):
        super().__init__(
            f"horizon {requested} exceeds the practical cap {cap} "
            "(raise it with BUBBLEPAT_HORIZON_CAP)"
        )
        self.requested = requested
        self.cap = cap


class NotADownset(BubblePatError, ValueError):
    pass


class EmptySequence(BubblePatError, ValueError):
    pass


class WitnessError(BubblePatError, AssertionError):
    """A constructed witness pair failed its own re-verification."""

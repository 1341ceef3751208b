"""
Exception hierarchy for sigma-orient.

None of these derive from ValueError: pydantic only wraps ValueError and
AssertionError raised inside validators, so ours surface with their own type.
"""
from typing import Optional


class SigmaError(Exception):
    """Base class. `exit_code` is what the CLI returns when this escapes."""
    exit_code = 64


# -- sequences ---------------------------------------------------------------

class SequenceError(SigmaError):
    pass


class DivisibilityError(SequenceError):
    pass


class LengthError(SequenceError):
    pass


class AlphabetError(SequenceError):
    pass


# -- labels and orderings ----------------------------------------------------

class SelfLoopError(SigmaError):
    pass


class OrderingError(SigmaError):
    pass


class SizeMismatch(SigmaError):
    pass


class TooSmall(SigmaError):
    pass


class InternalContradiction(SigmaError):
    """A construction reached a state its correctness argument rules out."""
    exit_code = 70


# -- blow-ups ----------------------------------------------------------------

class BlowUpError(SigmaError):
    pass


class BadMultiple(BlowUpError):
    pass


class MissingFreeValue(BlowUpError):
    pass


class SpuriousFreeValue(BlowUpError):
    pass


class NotABlowUp(BlowUpError):
    pass


class BaseOrderRejected(BlowUpError):
    pass


# -- search limits -----------------------------------------------------------

class TooLarge(SigmaError):
    exit_code = 2


class SpaceTooLarge(SigmaError):
    exit_code = 2


# -- constructions -----------------------------------------------------------

class OddN(SigmaError):
    pass


class EvenN(SigmaError):
    pass


class BlockRejected(SigmaError):
    pass


class MultipleFixedPoints(SigmaError):
    pass


# -- io ----------------------------------------------------------------------

class ParseError(SigmaError):
    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class UsageError(SigmaError):
    pass


class ConsistencyError(SigmaError):
    """Two columns of a sweep contradict a proven implication."""
    exit_code = 70

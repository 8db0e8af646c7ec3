"""Exception hierarchy shared by every kbalance module.

The CLI maps ``InvalidInputError`` subclasses to exit code 1 and
``InvariantViolation`` to exit code 2.
"""


class KBalanceError(Exception):
    """Base class for all kbalance errors"""


class InvalidInputError(KBalanceError):
    """Input rejected during validation"""


class FieldMismatchError(InvalidInputError):
    """Two quadratic values from different fields Q(sqrt D) were combined"""


class GrammarError(InvalidInputError):
    """Text could not be parsed as a value, word or generator"""


class AlphabetError(InvalidInputError):
    """Letters outside the expected alphabet, or overlapping alphabets"""


class FrequencyError(InvalidInputError):
    """Frequency vector is not positive, does not sum to 1, or mixes fields"""


class RangeError(InvalidInputError):
    """A length, window bound or alphabet size is out of range"""


class PreconditionError(InvalidInputError):
    """An operation was called outside its precondition"""


class InvariantViolation(KBalanceError):
    """An internal postcondition failed; indicates a bug, not bad input"""

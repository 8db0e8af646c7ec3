"""Colouring of a binary stream by two sub-streams, and its inverse images.

colour(u, a, b) replaces the n-th occurrence of the first letter of u by the
n-th symbol of a, and the n-th occurrence of the second letter by the n-th
symbol of b. project and erase_to are the letter-to-side map and the
erasing morphism used when reasoning about colourings.
"""

import logging
from typing import Dict, Iterable, Mapping, Tuple

from kbalance.errors import AlphabetError, PreconditionError
from kbalance.exact_arith import ONE, FieldElement
from kbalance.sequences import BINARY, LETTER_A, LETTER_B, Alphabet, SequenceStream, Word

logger = logging.getLogger(__name__)


class ColouringStream(SequenceStream):
    """Lazy colour(u, a, b); owns its three input streams.

    The letter of u listed first in u's alphabet plays the role of ``a``.
    """

    def __init__(self, u: SequenceStream, a: SequenceStream, b: SequenceStream):
        if len(u.alphabet) != 2:
            raise AlphabetError(f"the coloured stream must be binary, got alphabet {u.alphabet.symbols}")
        if not a.alphabet.isdisjoint(b.alphabet):
            overlap = sorted(set(a.alphabet) & set(b.alphabet))
            raise AlphabetError(f"colour streams share letters {overlap}")
        super().__init__(a.alphabet.union(b.alphabet))
        self.u, self.a, self.b = u, a, b
        self._letter_a = u.alphabet.symbols[0]
        self.occ_a = 0
        self.occ_b = 0

    def _emit(self) -> int:
        if self.u.next() == self._letter_a:
            self.occ_a += 1
            return self.a.next()
        self.occ_b += 1
        return self.b.next()


def colour(u: SequenceStream, a: SequenceStream, b: SequenceStream) -> ColouringStream:
    logger.debug(f"[Colour] colour over {a.alphabet.symbols} | {b.alphabet.symbols}")
    return ColouringStream(u, a, b)


def project(v: Word, partition: Tuple[Iterable[int], Iterable[int]]) -> Word:
    """Binary shadow of v: a where the letter lies in A, b where it lies in B"""
    side_a, side_b = set(partition[0]), set(partition[1])
    if side_a & side_b:
        raise AlphabetError(f"partition blocks overlap on {sorted(side_a & side_b)}")
    letters = []
    for x in v:
        if x in side_a:
            letters.append(LETTER_A)
        elif x in side_b:
            letters.append(LETTER_B)
        else:
            raise AlphabetError(f"letter {x} lies outside both blocks of the partition")
    return Word(letters, BINARY)


def erase_to(w: Word, keep: Iterable[int]) -> Word:
    """Subword of w made of the letters in keep, order preserved"""
    kept = set(keep)
    alphabet = Alphabet(tuple(s for s in w.alphabet if s in kept))
    return Word((x for x in w if x in kept), alphabet)


def coloured_frequencies(
    alpha: FieldElement,
    freqs_a: Mapping[int, FieldElement],
    freqs_b: Mapping[int, FieldElement],
) -> Dict[int, FieldElement]:
    """Letter frequencies of colour(u, a, b) from those of u, a and b.

    A letter j of a with frequency gamma gets alpha * gamma, a letter of b gets
    (1 - alpha) * gamma.
    """
    overlap = set(freqs_a) & set(freqs_b)
    if overlap:
        raise PreconditionError(f"colour streams share letters {sorted(overlap)}")
    result = {letter: alpha * gamma for letter, gamma in freqs_a.items()}
    result.update({letter: (ONE - alpha) * gamma for letter, gamma in freqs_b.items()})
    return result

"""Constant gap sequences: periodic words where each letter recurs at a fixed distance.

Checking two concatenated periods is enough: every gap of period^omega starts
inside some period and is at most one period long, so it appears in
period + period.
"""

import logging
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from kbalance.errors import InvariantViolation, PreconditionError, RangeError
from kbalance.sequences import CyclicStream, SequenceStream, Word

logger = logging.getLogger(__name__)


class GapWitness(BaseModel):
    letter: int
    first_gap: int
    second_gap: int

    def describe(self) -> str:
        return f"letter {self.letter}: gaps {self.first_gap},{self.second_gap}"


class GapCheck(BaseModel):
    """Outcome of is_constant_gap; truthy iff the period is constant gap"""

    is_constant: bool
    gaps: Dict[int, int] = {}
    witness: Optional[GapWitness] = None

    def __bool__(self) -> bool:
        return self.is_constant


class GapSpec(BaseModel):
    """One period of a constant gap sequence"""

    model_config = ConfigDict(frozen=True)

    period: Tuple[int, ...]

    @field_validator("period")
    @classmethod
    def _check_period(cls, period):
        if not period:
            raise RangeError("a constant gap period must be non-empty")
        check = is_constant_gap(Word(period))
        if not check:
            raise PreconditionError(f"not a constant gap period: {check.witness.describe()}")
        return period

    @property
    def word(self) -> Word:
        return Word(self.period)


def letter_gaps(period: Word) -> Dict[int, List[int]]:
    """Distances between consecutive occurrences of each letter in period + period"""
    doubled = period + period
    last: Dict[int, int] = {}
    gaps: Dict[int, List[int]] = {letter: [] for letter in period.alphabet if period.count(letter)}
    for i, x in enumerate(doubled):
        if x in last:
            gaps[x].append(i - last[x])
        last[x] = i
    return gaps


def is_constant_gap(period: Word) -> GapCheck:
    if len(period) == 0:
        raise RangeError("a constant gap period must be non-empty")
    constant: Dict[int, int] = {}
    for letter, gaps in letter_gaps(period).items():
        for gap in gaps[1:]:
            if gap != gaps[0]:
                return GapCheck(is_constant=False, witness=GapWitness(letter=letter, first_gap=gaps[0], second_gap=gap))
        constant[letter] = gaps[0]
    return GapCheck(is_constant=True, gaps=constant)


def gap_stream(spec: GapSpec) -> SequenceStream:
    return CyclicStream(spec.word)


def equal_frequency_pair(period: Word) -> Optional[Tuple[int, int]]:
    """Two distinct letters occurring equally often per period, None for one letter"""
    check = is_constant_gap(period)
    if not check:
        raise PreconditionError(f"not a constant gap period: {check.witness.describe()}")
    letters = [letter for letter in period.alphabet if period.count(letter)]
    if len(letters) < 2:
        return None
    for i, x in enumerate(letters):
        for y in letters[i + 1:]:
            if period.count(x) == period.count(y):
                return x, y
    raise InvariantViolation(f"constant gap period {period.render()} has all letter counts distinct")


def _canonical(letters: Tuple[int, ...]) -> Tuple[int, ...]:
    """Least rotation after renaming letters 1, 2, ... by first appearance"""
    best = None
    for shift in range(len(letters)):
        rotated = letters[shift:] + letters[:shift]
        names: Dict[int, int] = {}
        renamed = tuple(names.setdefault(x, len(names) + 1) for x in rotated)
        if best is None or renamed < best:
            best = renamed
    return best


def _coset_partitions(length: int, max_letters: int) -> Iterator[Tuple[int, ...]]:
    """All words of the given length whose letters occupy cosets r + gZ of Z_length"""
    divisors = [g for g in range(1, length + 1) if length % g == 0]
    assignment: List[int] = [0] * length

    def extend(used: int) -> Iterator[Tuple[int, ...]]:
        try:
            r = assignment.index(0)
        except ValueError:
            yield tuple(assignment)
            return
        if used == max_letters:
            return
        for g in divisors:
            cells = range(r % g, length, g)
            if any(assignment[i] for i in cells):
                continue
            for i in cells:
                assignment[i] = used + 1
            yield from extend(used + 1)
            for i in cells:
                assignment[i] = 0

    yield from extend(0)


def enumerate_constant_gap_periods(max_length: int, max_letters: int, min_letters: int = 1) -> List[Word]:
    """Every constant gap period up to renaming and rotation, shortest first"""
    if max_length < 1 or max_letters < 1:
        raise RangeError("max_length and max_letters must be positive")
    found = set()
    for length in range(1, max_length + 1):
        for letters in _coset_partitions(length, max_letters):
            if len(set(letters)) >= min_letters:
                found.add(_canonical(letters))
    periods = [Word(letters) for letters in sorted(found, key=lambda t: (len(t), t))]
    logger.debug(f"[ConstantGap] {len(periods)} periods up to length {max_length} over <= {max_letters} letters")
    return periods


class FrequencyForm(BaseModel):
    """Shape of a 1-balanced frequency vector colour(u, a, b) with constant gap a and b"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    a_period: Tuple[int, ...]
    b_period: Tuple[int, ...]
    a_multipliers: Tuple[Fraction, ...]
    b_multipliers: Tuple[Fraction, ...]

    def describe(self) -> str:
        a = ", ".join(f"alpha*{m}" for m in self.a_multipliers)
        b = ", ".join(f"(1-alpha)*{m}" for m in self.b_multipliers)
        a_word = "".join(map(str, self.a_period))
        b_word = "".join(map(str, self.b_period))
        return f"a=({a_word})^w b=({b_word})^w -> ({a}, {b})"


def _shapes(letters: int, max_length: int) -> Dict[Tuple[Fraction, ...], Tuple[int, ...]]:
    shapes: Dict[Tuple[Fraction, ...], Tuple[int, ...]] = {}
    for period in enumerate_constant_gap_periods(max_length, letters, min_letters=letters):
        if len(period.alphabet) != letters:
            continue
        key = tuple(sorted((Fraction(period.count(x), len(period)) for x in period.alphabet), reverse=True))
        shapes.setdefault(key, period.letters)
    return shapes


def one_balanced_frequency_forms(d: int, max_length: int = 12) -> List[FrequencyForm]:
    """Frequency vector shapes of d-ary colourings by constant gap pairs, up to permutation.

    Only periods of length <= max_length are searched.
    """
    if d < 2:
        raise RangeError(f"need at least two letters, got d={d}")
    forms = []
    for size_a in range(d - 1, (d - 1) // 2, -1):
        size_b = d - size_a
        for a_key, a_period in _shapes(size_a, max_length).items():
            for b_key, b_period in _shapes(size_b, max_length).items():
                if size_a == size_b and b_key < a_key:
                    continue
                forms.append(FrequencyForm(
                    a_period=a_period,
                    b_period=tuple(x + size_a for x in b_period),
                    a_multipliers=a_key,
                    b_multipliers=b_key,
                ))
    return forms

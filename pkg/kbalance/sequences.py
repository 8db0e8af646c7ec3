"""Words, streams and frequency vectors shared by generators and analyzers.

Letters are small non-negative integers. The letters of the construction's
binary words are 0 and 1, displayed as ``a`` and ``b``; d-ary words use
1..d. Inside a ``Word`` letters are also kept as contiguous indices into
the alphabet so count tables stay dense.
"""

import itertools
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from kbalance.errors import AlphabetError, FieldMismatchError, FrequencyError, GrammarError, RangeError
from kbalance.exact_arith import ONE, FieldElement, common_radicand, parse_vector, render

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct letters, optionally with display labels"""

    symbols: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        symbols = tuple(int(s) for s in self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if len(set(symbols)) != len(symbols):
            raise AlphabetError(f"duplicate letters in alphabet {symbols}")
        if any(s < 0 for s in symbols):
            raise AlphabetError(f"letters must be non-negative, got {symbols}")
        if self.labels is not None and len(self.labels) != len(symbols):
            raise AlphabetError("one label per letter is required")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    @classmethod
    def range(cls, d: int, start: int = 1) -> "Alphabet":
        """Letters start..start+d-1"""
        return cls(tuple(range(start, start + d)))

    def index(self, symbol: int) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise AlphabetError(f"letter {symbol} is not in alphabet {self.symbols}") from None

    def isdisjoint(self, other: "Alphabet") -> bool:
        return not set(self.symbols) & set(other.symbols)

    def union(self, other: "Alphabet") -> "Alphabet":
        return Alphabet(self.symbols + tuple(s for s in other.symbols if s not in self._index))

    def shifted(self, offset: int) -> "Alphabet":
        return Alphabet(tuple(s + offset for s in self.symbols))

    def label(self, symbol: int) -> str:
        if self.labels is not None:
            return self.labels[self.index(symbol)]
        return str(symbol)

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)


BINARY = Alphabet((0, 1), labels=("a", "b"))
LETTER_A, LETTER_B = BINARY.symbols


class Word:
    """Immutable finite word with cached per-letter count tables"""

    __slots__ = ("_letters", "_alphabet", "_counts", "_prefix")

    def __init__(self, letters: Iterable[int] = (), alphabet: Optional[Alphabet] = None):
        letters = tuple(letters)
        if alphabet is None:
            alphabet = Alphabet(tuple(sorted(set(letters))))
        else:
            for letter in set(letters):
                if letter not in alphabet:
                    raise AlphabetError(f"letter {letter} is not in alphabet {alphabet.symbols}")
        self._letters = letters
        self._alphabet = alphabet
        self._counts: Optional[Dict[int, int]] = None
        self._prefix: Optional[np.ndarray] = None

    @property
    def letters(self) -> Tuple[int, ...]:
        return self._letters

    @property
    def alphabet(self) -> Alphabet:
        return self._alphabet

    def count(self, letter: int) -> int:
        """|w|_a"""
        if letter not in self._alphabet:
            raise AlphabetError(f"letter {letter} is not in alphabet {self._alphabet.symbols}")
        if self._counts is None:
            counts = dict.fromkeys(self._alphabet.symbols, 0)
            for letter_, n in zip(*np.unique(self.codes(), return_counts=True)):
                counts[self._alphabet.symbols[letter_]] = int(n)
            self._counts = counts
        return self._counts[letter]

    def codes(self) -> np.ndarray:
        """Letters as alphabet indices"""
        index = self._alphabet.index
        return np.fromiter((index(x) for x in self._letters), dtype=np.int64, count=len(self._letters))

    def prefix_counts(self) -> np.ndarray:
        """Table P with P[j, i] = number of occurrences of letter j in w[0:i]"""
        if self._prefix is None:
            table = np.zeros((len(self._alphabet), len(self._letters) + 1), dtype=np.int64)
            codes = self.codes()
            for j in range(len(self._alphabet)):
                np.cumsum(codes == j, out=table[j, 1:])
            table.setflags(write=False)
            self._prefix = table
        return self._prefix

    def factor(self, start: int, length: int) -> "Word":
        if start < 0 or length < 0 or start + length > len(self):
            raise RangeError(f"factor [{start}, {start + length}) outside word of length {len(self)}")
        return self[start:start + length]

    def render(self) -> str:
        """Word file format: a/b for the binary alphabet, digits when letters <= 9, else commas"""
        if self._alphabet.labels is not None:
            return "".join(self._alphabet.label(x) for x in self._letters)
        if all(s <= 9 for s in self._alphabet.symbols):
            return "".join(str(x) for x in self._letters)
        rendered = ",".join(str(x) for x in self._letters)
        # a lone multi-digit letter keeps a trailing comma so it does not read back as digits
        return rendered + "," if len(self._letters) == 1 else rendered

    @classmethod
    def parse(cls, text: str, alphabet: Optional[Alphabet] = None) -> "Word":
        compact = "".join(text.split())
        if not compact:
            return cls((), alphabet or BINARY)
        if alphabet is not None and alphabet.labels is not None:
            lookup = dict(zip(alphabet.labels, alphabet.symbols))
            if any(ch not in lookup for ch in compact):
                raise GrammarError(f"word {compact[:20]!r} uses labels outside {alphabet.labels}")
            return cls((lookup[ch] for ch in compact), alphabet)
        if "," in compact:
            try:
                letters = [int(part) for part in compact.removesuffix(",").split(",")]
            except ValueError:
                raise GrammarError(f"malformed comma-separated word {compact[:20]!r}") from None
            return cls(letters, alphabet)
        if alphabet is None and set(compact) <= set(BINARY.labels):
            return cls.parse(compact, BINARY)
        if compact.isdigit():
            return cls((int(ch) for ch in compact), alphabet)
        raise GrammarError(f"malformed word {compact[:20]!r}")

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self._letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self._letters[item], self._alphabet)
        return self._letters[item]

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        alphabet = self._alphabet if other._alphabet == self._alphabet else self._alphabet.union(other._alphabet)
        return Word(self._letters + other._letters, alphabet)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self._letters == other._letters

    def __hash__(self) -> int:
        return hash(self._letters)

    def __repr__(self) -> str:
        text = self.render()
        return f"Word('{text if len(text) <= 40 else text[:37] + '...'}')"

    def __str__(self) -> str:
        return self.render()


def count_letter(w: Word, a: int) -> int:
    """The number of occurrences |w|_a"""
    return w.count(a)


def read_word(path: Path, alphabet: Optional[Alphabet] = None) -> Word:
    with open(path, encoding="utf-8") as f:
        return Word.parse(f.read(), alphabet)


def write_word(path: Path, w: Word) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(w.render() + "\n")


class SequenceStream(ABC):
    """Deterministic, never-ending, single-consumer symbol source"""

    def __init__(self, alphabet: Alphabet):
        if len(alphabet) == 0:
            raise AlphabetError("a stream needs a non-empty alphabet")
        self.alphabet = alphabet
        self.position = 0

    @abstractmethod
    def _emit(self) -> int:
        """Produce the symbol at index self.position"""

    def next(self) -> int:
        symbol = self._emit()
        self.position += 1
        return symbol

    def __iter__(self) -> "SequenceStream":
        return self

    def __next__(self) -> int:
        return self.next()


class ConstantStream(SequenceStream):
    """letter^omega"""

    def __init__(self, letter: int):
        super().__init__(Alphabet((letter,)))
        self.letter = letter

    def _emit(self) -> int:
        return self.letter


class CyclicStream(SequenceStream):
    """period^omega"""

    def __init__(self, period: Word):
        if len(period) == 0:
            raise RangeError("a periodic stream needs a non-empty period")
        super().__init__(period.alphabet)
        self._cycle = itertools.cycle(period.letters)

    def _emit(self) -> int:
        return next(self._cycle)


class WordStream(SequenceStream):
    """The letters of a finite word; reading past its end is an error"""

    def __init__(self, word: Word):
        super().__init__(word.alphabet)
        self._word = word

    @property
    def word(self) -> Word:
        return self._word

    def _emit(self) -> int:
        if self.position >= len(self._word):
            raise RangeError(f"word source exhausted after {len(self._word)} symbols")
        return self._word.letters[self.position]


class RelabelledStream(SequenceStream):
    """Shifts every letter of the inner stream by a fixed offset"""

    def __init__(self, inner: SequenceStream, offset: int):
        super().__init__(inner.alphabet.shifted(offset))
        self._inner = inner
        self._offset = offset

    def _emit(self) -> int:
        return self._inner.next() + self._offset


def relabel(stream: SequenceStream, offset: int) -> SequenceStream:
    return stream if offset == 0 else RelabelledStream(stream, offset)


def take_prefix(s: SequenceStream, n: int) -> Word:
    """First n symbols not yet consumed; advances the stream by n"""
    if n < 0:
        raise RangeError(f"prefix length must be non-negative, got {n}")
    return Word([s.next() for _ in range(n)], s.alphabet)


class FrequencyVector(BaseModel):
    """Positive exact letter frequencies summing to 1, all in one number field"""

    model_config = ConfigDict(frozen=True)

    entries: Dict[int, FieldElement]

    @model_validator(mode="after")
    def _check_distribution(self):
        if not self.entries:
            raise FrequencyError("frequency vector is empty")
        values = list(self.entries.values())
        try:
            common_radicand(values)
        except FieldMismatchError as e:
            raise FrequencyError(f"frequencies mix number fields: {e}") from e
        for letter, value in self.entries.items():
            if value.sign() <= 0:
                raise FrequencyError(f"frequency of letter {letter} must be positive, got {render(value)}")
        total = sum(values[1:], values[0])
        if total != ONE:
            raise FrequencyError(f"frequencies sum to {render(total)}, not 1")
        return self

    @classmethod
    def of(cls, values: Sequence[FieldElement], start: int = 1) -> "FrequencyVector":
        """Frequencies for letters start, start+1, ..."""
        return cls(entries={start + i: FieldElement.of(v) for i, v in enumerate(values)})

    @classmethod
    def parse(cls, text: str) -> "FrequencyVector":
        return cls.of(parse_vector(text))

    @property
    def alphabet(self) -> Alphabet:
        return Alphabet(tuple(self.entries))

    @property
    def d(self) -> int:
        return len(self.entries)

    @property
    def radicand(self) -> int:
        return common_radicand(list(self.entries.values()))

    def values(self) -> List[FieldElement]:
        return list(self.entries.values())

    def __getitem__(self, letter: int) -> FieldElement:
        return self.entries[letter]

    def render(self) -> str:
        return ",".join(render(v) for v in self.entries.values())

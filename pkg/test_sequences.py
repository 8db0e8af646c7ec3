"""Words, streams and frequency vectors."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbalance.errors import AlphabetError, FrequencyError, GrammarError, RangeError
from kbalance.exact_arith import FieldElement
from kbalance.sequences import (
    BINARY,
    Alphabet,
    ConstantStream,
    CyclicStream,
    FrequencyVector,
    Word,
    WordStream,
    count_letter,
    read_word,
    relabel,
    take_prefix,
    write_word,
)

words = st.lists(st.integers(1, 5), max_size=60).map(Word)


def test_alphabet_rules():
    assert Alphabet.range(3).symbols == (1, 2, 3)
    assert Alphabet((1, 2)).isdisjoint(Alphabet((3,)))
    assert Alphabet((1, 2)).union(Alphabet((2, 5))).symbols == (1, 2, 5)
    assert Alphabet((1, 2)).shifted(4).symbols == (5, 6)
    with pytest.raises(AlphabetError):
        Alphabet((1, 1))
    with pytest.raises(AlphabetError):
        Alphabet((-1,))


def test_count_letter():
    w = Word.parse("aabaa")
    assert count_letter(w, 0) == 4
    assert count_letter(w, 1) == 1
    assert count_letter(Word.parse(""), 0) == 0
    with pytest.raises(AlphabetError):
        w.count(7)


def test_word_parse_formats():
    assert Word.parse("abba").alphabet == BINARY
    assert Word.parse("1213").letters == (1, 2, 1, 3)
    assert Word.parse("10,11,12").letters == (10, 11, 12)
    assert Word.parse("12\n13\n").letters == (1, 2, 1, 3)
    with pytest.raises(GrammarError):
        Word.parse("1x2")
    with pytest.raises(GrammarError):
        Word.parse("1,,2")


def test_word_render():
    assert Word.parse("abba").render() == "abba"
    assert Word((1, 2, 3)).render() == "123"
    assert Word((9, 10)).render() == "9,10"


def test_single_large_letter_survives_render():
    assert Word((10,)).render() == "10,"
    assert Word.parse(Word((10,)).render()).letters == (10,)
    assert Word.parse("12,").letters == (12,)


def test_word_alphabet_is_checked():
    with pytest.raises(AlphabetError):
        Word((1, 4), Alphabet((1, 2)))


def test_prefix_counts():
    table = Word.parse("1213").prefix_counts()
    assert table.tolist() == [[0, 1, 1, 2, 2], [0, 0, 1, 1, 1], [0, 0, 0, 0, 1]]
    assert not table.flags.writeable


def test_factor_and_slicing():
    w = Word.parse("125136")
    assert w.factor(1, 3) == Word.parse("251")
    assert w[2:4].letters == (5, 1)
    assert (w[:2] + w[2:]) == w
    with pytest.raises(RangeError):
        w.factor(4, 3)


def test_word_file_round_trip(tmp_path):
    path = tmp_path / "w.txt"
    write_word(path, Word.parse("12513615"))
    assert path.read_text(encoding="utf-8") == "12513615\n"
    assert read_word(path) == Word.parse("12513615")


def test_take_prefix():
    assert take_prefix(ConstantStream(1), 5).render() == "11111"
    assert len(take_prefix(ConstantStream(1), 0)) == 0
    with pytest.raises(RangeError):
        take_prefix(ConstantStream(1), -1)


def test_streams_advance():
    s = CyclicStream(Word.parse("56"))
    assert take_prefix(s, 5).render() == "56565"
    assert s.position == 5
    assert take_prefix(s, 2).render() == "65"


def test_relabel_shifts_letters():
    s = relabel(CyclicStream(Word.parse("12")), 4)
    assert s.alphabet.symbols == (5, 6)
    assert take_prefix(s, 3).letters == (5, 6, 5)


def test_word_stream_is_finite():
    s = WordStream(Word.parse("121"))
    assert take_prefix(s, 3).render() == "121"
    with pytest.raises(RangeError):
        s.next()


def test_frequency_vector_validation():
    f = FrequencyVector.parse("1/2,1/3,1/6")
    assert f.d == 3
    assert f.alphabet.symbols == (1, 2, 3)
    assert f[2] == FieldElement(1, 0, 3)
    assert f.render() == "1/2,1/3,1/6"
    golden = FrequencyVector.parse("(3-sqrt(5))/2,(-1+sqrt(5))/2")
    assert golden.radicand == 5


@pytest.mark.parametrize("text", ["1/2,1/3", "1/2,1/2,0", "3/2,-1/2", "(0+sqrt(2))/2,(2-sqrt(3))/2"])
def test_frequency_vector_rejects(text):
    with pytest.raises(FrequencyError):
        FrequencyVector.parse(text)


@given(words)
@settings(max_examples=100)
def test_counts_match_prefix_table(w):
    table = w.prefix_counts()
    for j, letter in enumerate(w.alphabet):
        assert table[j, -1] == w.count(letter) == sum(1 for x in w if x == letter)
    assert np.all(np.diff(table, axis=1) >= 0)


@given(words)
@settings(max_examples=100)
def test_render_parse(w):
    if len(w):
        assert Word.parse(w.render()) == w

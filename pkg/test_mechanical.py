import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbalance.analyzers import measured_k
from kbalance.errors import AlphabetError, FieldMismatchError, RangeError
from kbalance.exact_arith import FieldElement, parse
from kbalance.mechanical import MechanicalParams, is_periodic, mechanical_stream, mechanical_symbol, period
from kbalance.sequences import BINARY, take_prefix

GOLDEN = FieldElement(3, -1, 2, 5)


def prefix(alpha, n, rho="0"):
    return take_prefix(mechanical_stream(MechanicalParams(alpha=parse(alpha), rho=parse(rho))), n)


def test_known_prefixes():
    assert prefix("1/2", 8).render() == "babababa"
    assert prefix("(3-sqrt(5))/2", 10).render() == "bbabbababb"
    assert prefix("1/3", 6).render() == "bbabba"


def test_intercept_shifts_the_word():
    assert prefix("1/2", 4, rho="1/2").render() == "abab"


def test_binary_alphabet_by_default():
    params = MechanicalParams(alpha=GOLDEN)
    assert params.alphabet == BINARY
    shifted = MechanicalParams(alpha=GOLDEN, letter_a=3, letter_b=4)
    assert shifted.alphabet.symbols == (3, 4)


@pytest.mark.parametrize("alpha, rho", [("0", "0"), ("1", "0"), ("3/2", "0"), ("1/2", "1"), ("1/2", "-1/3")])
def test_ranges_are_checked(alpha, rho):
    with pytest.raises(RangeError):
        MechanicalParams(alpha=parse(alpha), rho=parse(rho))


def test_letters_must_differ():
    with pytest.raises(AlphabetError):
        MechanicalParams(alpha=GOLDEN, letter_a=1, letter_b=1)


def test_slope_and_intercept_share_a_field():
    with pytest.raises(FieldMismatchError):
        MechanicalParams(alpha=GOLDEN, rho=FieldElement(0, 1, 2, 2))


def test_periodicity():
    rational = MechanicalParams(alpha=parse("2/7"))
    assert is_periodic(rational)
    assert period(rational) == 7
    w = take_prefix(mechanical_stream(rational), 21)
    assert w[:7] + w[:7] + w[:7] == w
    assert not is_periodic(MechanicalParams(alpha=GOLDEN))
    assert period(MechanicalParams(alpha=GOLDEN)) is None


def test_sturmian_prefix_is_one_balanced():
    w = take_prefix(mechanical_stream(MechanicalParams(alpha=GOLDEN)), 1000)
    assert measured_k(w, 500) == 1


@st.composite
def slopes(draw):
    q = draw(st.integers(2, 60))
    if draw(st.booleans()):
        return FieldElement(draw(st.integers(1, q - 1)), 0, q)
    radicand = draw(st.sampled_from([2, 3, 5, 7, 11]))
    x = FieldElement(0, draw(st.integers(1, 30)), 1, radicand)
    return x - math.floor(x)


@given(slopes(), st.integers(0, 9))
@settings(max_examples=60, deadline=None)
def test_stream_matches_direct_evaluation(alpha, tenths):
    params = MechanicalParams(alpha=alpha, rho=FieldElement(tenths, 0, 10))
    w = take_prefix(mechanical_stream(params), 200)
    assert list(w) == [mechanical_symbol(params, n) for n in range(200)]

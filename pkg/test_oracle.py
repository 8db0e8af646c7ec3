"""Brute-force oracles, the inline generator grammar and the lemma checks at small scale."""

import random

import pytest

from kbalance.builder import certified_k
from kbalance.errors import GrammarError, PreconditionError, RangeError
from kbalance.exact_arith import ONE, ZERO, FieldElement
from kbalance.generators import GeneratorSpec, open_stream, parse_generator
from kbalance.oracle import (
    brute_balance,
    brute_complexity,
    check_constant_gap_lemma,
    check_equal_frequencies,
    check_freq_exists,
    check_hubert,
    check_main_theorem,
    check_oracle_equivalence,
    check_plus1,
    check_plus1_family,
    check_sturmian_witness,
    plus1_measurement,
    random_frequencies,
    random_quadratic,
    run_lemma,
    verify_word_against_oracle,
)
from kbalance.sequences import Word, take_prefix

V = "12513615416215361451621531645126135"


def test_brute_balance_examples():
    assert brute_balance(Word.parse("1" * 50), 50).k == 0
    assert brute_balance(Word.parse(V), 35).k == 1


def test_brute_complexity_examples():
    assert brute_complexity(Word.parse("ababab"), 2).c(2) == 2


def test_brute_checks_window():
    with pytest.raises(RangeError):
        brute_balance(Word.parse("12"), 0)
    with pytest.raises(RangeError):
        brute_complexity(Word.parse("12"), 3)


def test_generator_grammar():
    spec = parse_generator("mech:(3-sqrt(5))/2")
    assert spec.kind == "mech" and spec.offset == 0
    assert take_prefix(open_stream(spec), 10).render() == "bbabbababb"
    shifted = parse_generator("gap:12@4")
    assert take_prefix(open_stream(shifted), 4).letters == (5, 6, 5, 6)
    assert parse_generator("build:1/2,1/2").render() == "build:1/2,1/2"
    assert take_prefix(open_stream(parse_generator("const:7")), 3).render() == "777"
    assert parse_generator("mech:1/3:1/2@2").mechanical_params().letter_a == 2


@pytest.mark.parametrize("text", ["mech", "foo:1/2", "gap:12@x", "build:"])
def test_generator_grammar_rejects(text):
    with pytest.raises(GrammarError):
        parse_generator(text)


def test_const_needs_integer():
    with pytest.raises(GrammarError):
        open_stream(GeneratorSpec(kind="const", body="x"))


@pytest.mark.parametrize("text, k", [("mech:1/3", 1), ("gap:121314", 1), ("gap:1", 0), ("build:1/3,1/3,1/3", 2), ("const:1", 0)])
def test_known_balance(text, k):
    assert parse_generator(text).known_balance == k


def test_plus1_hubert_instance():
    u, a, b = parse_generator("mech:(3-sqrt(5))/2"), parse_generator("gap:121314"), parse_generator("gap:56")
    assert check_plus1(u, a, b, 2000)
    measured, bound = plus1_measurement(u, a, b, 2000)
    assert (measured, bound) == (1, 2)


def test_plus1_with_built_colour_stream():
    u = parse_generator("mech:(3-sqrt(5))/2")
    a = parse_generator("build:1/3,1/3,1/3")
    b = parse_generator("const:4")
    measured, bound = plus1_measurement(u, a, b, 3000)
    assert bound == 3
    assert measured <= bound


def test_plus1_rejects_degenerate_u():
    with pytest.raises(PreconditionError):
        check_plus1(parse_generator("const:1"), parse_generator("gap:2"), parse_generator("gap:3"), 100)


def test_random_values_are_in_range():
    rng = random.Random(3)
    for _ in range(50):
        t = random_quadratic(rng)
        assert ZERO < t < ONE
        assert not t.is_rational
        f = random_frequencies(rng, rng.randint(2, 6), quadratic=True)
        assert sum(f.values(), ZERO) == ONE


def test_lemma_checks_pass_at_small_scale():
    assert check_plus1_family(8, seed=1, n=1500).passed
    assert check_freq_exists(6, seed=2, n=1500, n_max=100).passed
    assert check_hubert(6, seed=3, n=1500).passed
    assert check_equal_frequencies(4, seed=4, n=3000).passed
    assert check_sturmian_witness(n=2000).max_measured_k == 1


def test_constant_gap_lemma_is_exhaustive():
    result = check_constant_gap_lemma(max_length=8, max_letters=3)
    assert result.passed
    assert result.trials >= 5


def test_main_theorem_small():
    result = check_main_theorem(2, seed=0, n=5000, n_max=200, dimensions=range(2, 6), quadratic_trials=1)
    assert result.passed
    assert result.trials == 12
    assert result.max_measured_k <= certified_k(5)


def test_lemma_checks_are_deterministic():
    first = check_plus1_family(4, seed=9, n=600)
    second = check_plus1_family(4, seed=9, n=600)
    assert first.max_measured_k == second.max_measured_k
    assert first.failures == second.failures


def test_verify_word_against_oracle():
    result = verify_word_against_oracle(Word.parse(V), 20)
    assert result.passed
    assert result.max_measured_k == 1


def test_oracle_equivalence_on_random_words():
    assert check_oracle_equivalence(30, seed=5, max_length=120, n_max=30).passed


def test_run_lemma_dispatch():
    assert run_lemma("constant-gap", 0, 0).lemma == "constant-gap"
    assert run_lemma("freq-exists", 2, 0, 800).passed
    with pytest.raises(PreconditionError):
        run_lemma("nope", 1, 0)

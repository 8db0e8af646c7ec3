"""Brute-force recomputation of the analyzers and randomized checks of the balance lemmas.

The brute-force functions share no code with kbalance.analyzers: they slice
every factor out of the word and count it directly. Every lemma check is
deterministic given its seed and returns a LemmaResult.
"""

import itertools
import logging
import math
import random
import time
from collections import Counter
from typing import Callable, Dict, List, Optional, Tuple

from kbalance.analyzers import balance_profile, factor_complexity, measured_k, window_count_violation
from kbalance.builder import build_prefix, certified_k, complexity_bound
from kbalance.colouring import colour, coloured_frequencies
from kbalance.config import get_settings
from kbalance.constant_gap import enumerate_constant_gap_periods, equal_frequency_pair, is_constant_gap
from kbalance.errors import PreconditionError, RangeError
from kbalance.exact_arith import ONE, FieldElement, parse, render
from kbalance.generators import GeneratorSpec, open_stream
from kbalance.mechanical import MechanicalParams, mechanical_stream
from kbalance.schemas import BalanceProfile, ComplexityTable, LemmaResult
from kbalance.sequences import LETTER_A, FrequencyVector, Word, take_prefix

logger = logging.getLogger(__name__)

_RADICANDS = (2, 3, 5, 6, 7, 10, 11, 13)


def brute_balance(w: Word, n_max: int) -> BalanceProfile:
    """delta_a(n) from every pair of distinct factor count vectors of length n"""
    if not 1 <= n_max <= len(w):
        raise RangeError(f"n_max must lie in [1, {len(w)}], got {n_max}")
    letters = list(w.alphabet.symbols)
    deficiency: Dict[int, List[int]] = {letter: [] for letter in letters}
    for n in range(1, n_max + 1):
        vectors = {
            tuple(Counter(w.letters[i:i + n])[x] for x in letters)
            for i in range(len(w) - n + 1)
        }
        for j, letter in enumerate(letters):
            deficiency[letter].append(max(abs(u[j] - v[j]) for u in vectors for v in vectors))
    return BalanceProfile(letters=letters, n_max=n_max, deficiency=deficiency)


def brute_complexity(w: Word, n_max: int) -> ComplexityTable:
    if not 1 <= n_max <= len(w):
        raise RangeError(f"n_max must lie in [1, {len(w)}], got {n_max}")
    counts = [1]
    for n in range(1, n_max + 1):
        counts.append(len({w.letters[i:i + n] for i in range(len(w) - n + 1)}))
    return ComplexityTable(word_length=len(w), counts=counts)


def brute_constant_gap_periods(max_length: int, max_letters: int) -> List[Word]:
    """Filter every word over 1..max_letters; canonical up to renaming and rotation"""
    found = set()
    for length in range(1, max_length + 1):
        for letters in itertools.product(range(1, max_letters + 1), repeat=length):
            if is_constant_gap(Word(letters)):
                best = None
                for shift in range(length):
                    rotated = letters[shift:] + letters[:shift]
                    names: Dict[int, int] = {}
                    renamed = tuple(names.setdefault(x, len(names) + 1) for x in rotated)
                    best = renamed if best is None or renamed < best else best
                found.add(best)
    return [Word(letters) for letters in sorted(found, key=lambda t: (len(t), t))]


def _default_window(n: int, n_max: Optional[int]) -> int:
    return max(1, min(n // 2, 2000) if n_max is None else min(n_max, n))


def plus1_measurement(u: GeneratorSpec, a: GeneratorSpec, b: GeneratorSpec, n: int, n_max: Optional[int] = None) -> Tuple[int, int]:
    """(measured k of colour(u, a, b)[0:n], max(k_a, k_b) + l)"""
    u_stream = open_stream(u)
    if len(u_stream.alphabet) != 2:
        raise PreconditionError(f"{u.render()} must use both letters with positive frequency")
    if n < 2:
        raise RangeError(f"prefix length must be at least 2, got {n}")
    word = take_prefix(colour(u_stream, open_stream(a), open_stream(b)), n)
    bound = max(a.known_balance, b.known_balance) + u.known_balance
    return measured_k(word, _default_window(n, n_max)), bound


def check_plus1(u: GeneratorSpec, a: GeneratorSpec, b: GeneratorSpec, n: int, n_max: Optional[int] = None) -> bool:
    """True iff the colouring prefix of length n is measured within k + l"""
    measured, bound = plus1_measurement(u, a, b, n, n_max)
    return measured <= bound


def random_rational(rng: random.Random, max_denominator: int = 100) -> FieldElement:
    q = rng.randint(2, max_denominator)
    return FieldElement(rng.randint(1, q - 1), 0, q)


def random_quadratic(rng: random.Random) -> FieldElement:
    """Fractional part of m*sqrt(D): irrational and inside (0, 1)"""
    radicand, m = rng.choice(_RADICANDS), rng.randint(1, 20)
    x = FieldElement(0, m, 1, radicand)
    return x - math.floor(x)


def random_composition(rng: random.Random, d: int, max_denominator: int = 100) -> List[FieldElement]:
    """d positive rationals summing to 1 with a common denominator <= max_denominator"""
    q = rng.randint(max(d, 2), max(d, max_denominator))
    cuts = sorted(rng.sample(range(1, q), d - 1))
    bounds = [0] + cuts + [q]
    return [FieldElement(hi - lo, 0, q) for lo, hi in zip(bounds, bounds[1:])]


def random_frequencies(rng: random.Random, d: int, quadratic: bool = False) -> FrequencyVector:
    if not quadratic or d == 1:
        return FrequencyVector.of(random_composition(rng, d))
    t = random_quadratic(rng)
    values = [t * p for p in random_composition(rng, d - 1)] + [ONE - t]
    rng.shuffle(values)
    return FrequencyVector.of(values)


def _random_component(rng: random.Random, periods: List[Word], offset: int) -> GeneratorSpec:
    kind = rng.choice(("gap", "build", "const", "mech"))
    if kind == "gap":
        return GeneratorSpec(kind="gap", body=rng.choice(periods).render(), offset=offset)
    if kind == "build":
        f = random_frequencies(rng, rng.randint(2, 4), quadratic=rng.random() < 0.3)
        return GeneratorSpec(kind="build", body=f.render(), offset=offset)
    if kind == "mech":
        alpha = random_quadratic(rng) if rng.random() < 0.5 else random_rational(rng)
        return GeneratorSpec(kind="mech", body=render(alpha), offset=offset)
    return GeneratorSpec(kind="const", body="1", offset=offset)


def _random_binary(rng: random.Random) -> GeneratorSpec:
    kind = rng.choice(("mech", "mech", "gap", "build"))
    if kind == "mech":
        alpha = random_quadratic(rng) if rng.random() < 0.5 else random_rational(rng)
        return GeneratorSpec(kind="mech", body=render(alpha))
    if kind == "gap":
        return GeneratorSpec(kind="gap", body="12")
    return GeneratorSpec(kind="build", body=random_frequencies(rng, 2).render())


def _result(lemma: str, trials: int, failures: List[str], start_time: float, max_k: Optional[int] = None) -> LemmaResult:
    result = LemmaResult(
        lemma=lemma,
        trials=trials,
        passed=not failures,
        max_measured_k=max_k,
        failures=failures,
        duration_ms=(time.time() - start_time) * 1000,
    )
    status = "passed" if result.passed else f"FAILED ({len(failures)})"
    logger.info(f"[Oracle] {lemma}: {trials} trials {status} in {result.duration_ms / 1000:.2f}s")
    return result


def check_plus1_family(trials: int, seed: int, n: int = 10000, n_max: Optional[int] = None) -> LemmaResult:
    """Random colour compositions stay within max(k_a, k_b) + l"""
    start_time = time.time()
    rng = random.Random(seed)
    periods = enumerate_constant_gap_periods(6, 3, min_letters=1)
    failures: List[str] = []
    worst = 0
    for _ in range(trials):
        u = _random_binary(rng)
        a = _random_component(rng, periods, 0)
        b = _random_component(rng, periods, max(open_stream(a).alphabet.symbols) + 1)
        measured, bound = plus1_measurement(u, a, b, n, n_max)
        worst = max(worst, measured)
        if measured > bound:
            failures.append(f"u={u.render()} a={a.render()} b={b.render()}: measured {measured} > {bound}")
    return _result("plus1", trials, failures, start_time, worst)


def check_freq_exists(trials: int, seed: int, n: int = 5000, n_max: int = 200) -> LemmaResult:
    """Factors of mechanical words hold floor(alpha m) or ceil(alpha m) letters a"""
    start_time = time.time()
    rng = random.Random(seed)
    failures: List[str] = []
    worst = 0
    for trial in range(trials):
        alpha = random_quadratic(rng) if trial % 2 else random_rational(rng)
        word = take_prefix(mechanical_stream(MechanicalParams(alpha=alpha)), n)
        window = min(n_max, n)
        violation = window_count_violation(word, LETTER_A, alpha, window)
        if violation is not None:
            failures.append(f"alpha={render(alpha)}: factor of length {violation[0]} holds {violation[1]} letters a")
        worst = max(worst, measured_k(word, window))
    return _result("freq-exists", trials, failures, start_time, worst)


def check_constant_gap_lemma(max_length: int = 12, min_letters: int = 2, max_letters: int = 4) -> LemmaResult:
    """Every constant gap period over several letters has two letters of equal frequency"""
    start_time = time.time()
    periods = enumerate_constant_gap_periods(max_length, max_letters, min_letters=min_letters)
    failures = [p.render() for p in periods if equal_frequency_pair(p) is None]
    return _result("constant-gap", len(periods), failures, start_time)


def _random_hubert(rng: random.Random, periods: List[Word]) -> Tuple[GeneratorSpec, GeneratorSpec, GeneratorSpec]:
    a_period = rng.choice(periods)
    b_period = rng.choice(periods)
    u = GeneratorSpec(kind="mech", body=render(random_quadratic(rng)))
    a = GeneratorSpec(kind="gap", body=a_period.render())
    b = GeneratorSpec(kind="gap", body=b_period.render(), offset=max(a_period.alphabet.symbols))
    return u, a, b


def check_hubert(trials: int, seed: int, n: int = 10000, n_max: Optional[int] = None) -> LemmaResult:
    """Sturmian words coloured by constant gap pairs are 1-balanced"""
    start_time = time.time()
    rng = random.Random(seed)
    periods = enumerate_constant_gap_periods(8, 4)
    failures: List[str] = []
    worst = 0
    for _ in range(trials):
        u, a, b = _random_hubert(rng, periods)
        measured, _ = plus1_measurement(u, a, b, n, n_max)
        worst = max(worst, measured)
        if measured > 1:
            failures.append(f"u={u.render()} a={a.render()} b={b.render()}: measured {measured} > 1")
    return _result("hubert", trials, failures, start_time, worst)


def check_equal_frequencies(trials: int, seed: int, n: int = 10000) -> LemmaResult:
    """Colourings over three or more letters have two letters of exactly equal frequency"""
    start_time = time.time()
    rng = random.Random(seed)
    tolerance = parse(get_settings().frequency_tolerance)
    periods = enumerate_constant_gap_periods(8, 4)
    failures: List[str] = []
    done = 0
    while done < trials:
        u, a, b = _random_hubert(rng, periods)
        a_word, b_word = Word.parse(a.body), Word.parse(b.body)
        if len(a_word.alphabet) + len(b_word.alphabet) < 3:
            continue
        done += 1
        alpha = u.mechanical_params().alpha
        exact = coloured_frequencies(
            alpha,
            {x: FieldElement(a_word.count(x), 0, len(a_word)) for x in a_word.alphabet},
            {x + b.offset: FieldElement(b_word.count(x), 0, len(b_word)) for x in b_word.alphabet},
        )
        pair = equal_frequency_pair(a_word)
        if pair is None:
            x, y = equal_frequency_pair(b_word)
            pair = (x + b.offset, y + b.offset)
        i, j = pair
        if exact[i] != exact[j]:
            failures.append(f"u={u.render()} a={a.render()} b={b.render()}: f_{i} != f_{j}")
            continue
        word = take_prefix(colour(open_stream(u), open_stream(a), open_stream(b)), n)
        gap = abs(FieldElement(word.count(i) - word.count(j), 0, n))
        if gap > tolerance:
            failures.append(f"u={u.render()} a={a.render()} b={b.render()}: empirical f_{i}, f_{j} differ by {render(gap)}")
    return _result("equal-frequency", trials, failures, start_time)


def check_main_theorem(
    trials: int,
    seed: int,
    n: int = 10000,
    n_max: Optional[int] = None,
    dimensions=range(2, 9),
    quadratic_trials: Optional[int] = None,
    complexity_window: int = 50,
) -> LemmaResult:
    """Built prefixes are ceil(log2 d)-balanced, converge to f, and respect (m+1)^(d-1)"""
    start_time = time.time()
    rng = random.Random(seed)
    tolerance = parse(get_settings().frequency_tolerance)
    quadratic_trials = max(1, trials // 10) if quadratic_trials is None else quadratic_trials
    window = _default_window(n, n_max)
    failures: List[str] = []
    worst = 0
    total = 0
    for d in dimensions:
        for trial in range(trials + quadratic_trials):
            total += 1
            f = random_frequencies(rng, d, quadratic=trial >= trials)
            word = build_prefix(f, n)
            k = measured_k(word, window)
            worst = max(worst, k)
            if k > certified_k(d):
                failures.append(f"f=({f.render()}): measured k={k} > {certified_k(d)}")
            for letter, target in f.entries.items():
                error = abs(FieldElement(word.count(letter), 0, n) - target)
                if error > tolerance:
                    failures.append(f"f=({f.render()}): letter {letter} frequency off by {float(error):.6f}")
            if d <= 4:
                table = factor_complexity(word, min(complexity_window, n))
                for m, count in enumerate(table.counts):
                    if count > complexity_bound(d, m):
                        failures.append(f"f=({f.render()}): C({m})={count} > {complexity_bound(d, m)}")
                        break
    return _result("main-theorem", total, failures, start_time, worst)


def check_sturmian_witness(n: int = 50000, n_max: Optional[int] = None, alpha: Optional[FieldElement] = None) -> LemmaResult:
    """A quadratic slope mechanical word measures exactly 1, witnessing BT(2) = 1 from below"""
    start_time = time.time()
    alpha = alpha if alpha is not None else FieldElement(3, -1, 2, 5)
    word = take_prefix(mechanical_stream(MechanicalParams(alpha=alpha)), n)
    k = measured_k(word, _default_window(n, n_max))
    failures = [] if k == 1 else [f"alpha={render(alpha)}: measured k={k}, expected 1"]
    return _result("sturmian", 1, failures, start_time, k)


def verify_word_against_oracle(w: Word, n_max: int) -> LemmaResult:
    """Optimized and brute-force balance and complexity on the same word"""
    start_time = time.time()
    failures: List[str] = []
    fast, slow = balance_profile(w, n_max), brute_balance(w, n_max)
    for letter in fast.letters:
        for n in range(1, n_max + 1):
            if fast.delta(letter, n) != slow.delta(letter, n):
                failures.append(f"balance letter {letter} n={n}: {fast.delta(letter, n)} != {slow.delta(letter, n)}")
    fast_c, slow_c = factor_complexity(w, n_max), brute_complexity(w, n_max)
    for n, (x, y) in enumerate(zip(fast_c.counts, slow_c.counts)):
        if x != y:
            failures.append(f"complexity n={n}: {x} != {y}")
    return _result("oracle", 1, failures, start_time, fast.k)


def check_oracle_equivalence(trials: int, seed: int, max_length: int = 500, max_letters: int = 5, n_max: int = 40) -> LemmaResult:
    """Random words over at most max_letters letters, compared window by window"""
    start_time = time.time()
    rng = random.Random(seed)
    failures: List[str] = []
    for _ in range(trials):
        length = rng.randint(1, max_length)
        d = rng.randint(1, max_letters)
        word = Word(rng.randint(1, d) for _ in range(length))
        outcome = verify_word_against_oracle(word, min(n_max, length))
        failures.extend(f"{word.render()[:30]}: {failure}" for failure in outcome.failures)
    return _result("oracle", trials, failures, start_time)


LEMMAS: Dict[str, Callable[..., LemmaResult]] = {
    "plus1": check_plus1_family,
    "freq-exists": check_freq_exists,
    "hubert": check_hubert,
    "equal-frequency": check_equal_frequencies,
    "main-theorem": check_main_theorem,
    "oracle": check_oracle_equivalence,
}


def run_lemma(name: str, trials: int, seed: int, n: Optional[int] = None) -> LemmaResult:
    """Dispatch one named check; constant-gap is exhaustive and ignores trials and seed"""
    if name == "constant-gap":
        return check_constant_gap_lemma()
    if name == "sturmian":
        return check_sturmian_witness(**({} if n is None else {"n": n}))
    if name not in LEMMAS:
        raise PreconditionError(f"unknown lemma {name!r}; choose from {sorted([*LEMMAS, 'constant-gap', 'sturmian'])}")
    if n is None or name == "oracle":
        return LEMMAS[name](trials, seed)
    return LEMMAS[name](trials, seed, n)

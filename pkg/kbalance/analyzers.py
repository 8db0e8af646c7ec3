"""Measurements on finite words: balance, factor complexity, frequencies, discrepancy, period.

Everything is exact. Balance on a finite prefix is a measured value: it is a
lower bound for the balance constant of the infinite sequence the prefix
came from.
"""

import logging
import math
import time
from collections import deque
from typing import Dict, List, Optional, Tuple

import numpy as np

from kbalance.errors import AlphabetError, RangeError
from kbalance.exact_arith import FieldElement, quadratic_sign
from kbalance.schemas import BalanceProfile, ComplexityTable, DiscrepancyReport, MetricName, MetricReport
from kbalance.sequences import FrequencyVector, Word

logger = logging.getLogger(__name__)


def _check_window(w: Word, n_max: int) -> None:
    if not 1 <= n_max <= len(w):
        raise RangeError(f"n_max must lie in [1, {len(w)}], got {n_max}")


def balance_profile(w: Word, n_max: int) -> BalanceProfile:
    """delta_a(n) for every letter and 1 <= n <= n_max.

    Window counts of length n are P[i+n] - P[i] over the prefix count table,
    reduced with one vectorized max/min pass per n.
    """
    _check_window(w, n_max)
    start_time = time.time()
    table = w.prefix_counts()
    deficiency = np.empty((table.shape[0], n_max), dtype=np.int64)
    for n in range(1, n_max + 1):
        windows = table[:, n:] - table[:, :-n]
        deficiency[:, n - 1] = windows.max(axis=1) - windows.min(axis=1)
    letters = list(w.alphabet.symbols)
    profile = BalanceProfile(
        letters=letters,
        n_max=n_max,
        deficiency={letter: deficiency[j].tolist() for j, letter in enumerate(letters)},
    )
    logger.info(f"[Analyzer] Balance |w|={len(w)} n_max={n_max} k={profile.k} in {time.time() - start_time:.2f}s")
    return profile


def measured_k(w: Word, n_max: int) -> int:
    return balance_profile(w, n_max).k


class SuffixAutomaton:
    """Minimal automaton of all factors of a sequence, built online in linear size"""

    def __init__(self, letters):
        self.next: List[Dict[int, int]] = [{}]
        self.link: List[int] = [-1]
        self.length: List[int] = [0]
        self._last = 0
        for letter in letters:
            self._extend(letter)

    def _new_state(self, length: int, link: int, transitions: Dict[int, int]) -> int:
        self.next.append(transitions)
        self.link.append(link)
        self.length.append(length)
        return len(self.length) - 1

    def _extend(self, letter: int) -> None:
        current = self._new_state(self.length[self._last] + 1, 0, {})
        p = self._last
        while p != -1 and letter not in self.next[p]:
            self.next[p][letter] = current
            p = self.link[p]
        if p != -1:
            q = self.next[p][letter]
            if self.length[p] + 1 == self.length[q]:
                self.link[current] = q
            else:
                clone = self._new_state(self.length[p] + 1, self.link[q], dict(self.next[q]))
                while p != -1 and self.next[p].get(letter) == q:
                    self.next[p][letter] = clone
                    p = self.link[p]
                self.link[q] = self.link[current] = clone
        self._last = current

    def __len__(self) -> int:
        return len(self.length)

    def factor_counts(self, n_max: int) -> List[int]:
        """Distinct factors of each length 0..n_max.

        State v stands for the factors of lengths length[link[v]]+1 .. length[v].
        """
        diff = [0] * (n_max + 2)
        for v in range(1, len(self.length)):
            lo = self.length[self.link[v]] + 1
            hi = min(self.length[v], n_max)
            if lo <= hi:
                diff[lo] += 1
                diff[hi + 1] -= 1
        counts = [1]
        running = 0
        for n in range(1, n_max + 1):
            running += diff[n]
            counts.append(running)
        return counts


def factor_complexity(w: Word, n_max: int) -> ComplexityTable:
    _check_window(w, n_max)
    start_time = time.time()
    automaton = SuffixAutomaton(w.letters)
    table = ComplexityTable(word_length=len(w), counts=automaton.factor_counts(n_max))
    logger.info(f"[Analyzer] Complexity |w|={len(w)} states={len(automaton)} in {time.time() - start_time:.2f}s")
    return table


def empirical_frequencies(w: Word) -> Dict[int, FieldElement]:
    if len(w) == 0:
        raise RangeError("frequencies of the empty word are undefined")
    return {letter: FieldElement(w.count(letter), 0, len(w)) for letter in w.alphabet}


def _scaled_errors(w: Word, f: FrequencyVector, letter: int):
    """Integers (x_i, y_i) with c * (|w[0:i]|_a - f_a * i) = x_i + y_i * sqrt(D), i = 0..|w|"""
    target = f[letter]
    counts = w.prefix_counts()[w.alphabet.index(letter)] if letter in w.alphabet else np.zeros(len(w) + 1, np.int64)
    c, p, q = target.c, target.a, target.b
    return [(c * int(count) - p * i, -q * i) for i, count in enumerate(counts)]


def _check_alphabet(w: Word, f: FrequencyVector) -> None:
    foreign = [x for x in w.alphabet if x not in f.entries]
    if foreign:
        raise AlphabetError(f"letters {foreign} have no target frequency")


def discrepancy(w: Word, f: FrequencyVector) -> DiscrepancyReport:
    """Prefix discrepancy B_a = max over prefixes of | |w|_a - f_a |w| |"""
    _check_alphabet(w, f)
    radicand = f.radicand
    per_letter = {}
    for letter, target in f.entries.items():
        errors = _scaled_errors(w, f, letter)
        high = low = errors[0]
        for x, y in errors[1:]:
            if quadratic_sign(x - high[0], y - high[1], radicand) > 0:
                high = (x, y)
            if quadratic_sign(x - low[0], y - low[1], radicand) < 0:
                low = (x, y)
        per_letter[letter] = max(FieldElement(*high, target.c, radicand), -FieldElement(*low, target.c, radicand))
    return DiscrepancyReport(scope="prefixes", per_letter=per_letter)


def factor_discrepancy(w: Word, f: FrequencyVector, n_max: int) -> DiscrepancyReport:
    """max | |u|_a - f_a |u| | over factors u with 1 <= |u| <= n_max.

    With E_j the scaled prefix error, a factor w[i:j] contributes E_j - E_i, so
    the extremes come from the minimum and maximum of E over the trailing
    window [j - n_max, j - 1], kept in two monotone deques.
    """
    _check_window(w, n_max)
    _check_alphabet(w, f)
    radicand = f.radicand

    def less(u: Tuple[int, int], v: Tuple[int, int]) -> bool:
        return quadratic_sign(u[0] - v[0], u[1] - v[1], radicand) < 0

    per_letter = {}
    for letter, target in f.entries.items():
        errors = _scaled_errors(w, f, letter)
        minima: deque = deque()
        maxima: deque = deque()
        best = (0, 0)
        for j in range(1, len(errors)):
            i = j - 1
            while minima and not less(errors[minima[-1]], errors[i]):
                minima.pop()
            minima.append(i)
            while maxima and not less(errors[i], errors[maxima[-1]]):
                maxima.pop()
            maxima.append(i)
            while minima[0] < j - n_max:
                minima.popleft()
            while maxima[0] < j - n_max:
                maxima.popleft()
            e = errors[j]
            for candidate in ((e[0] - errors[minima[0]][0], e[1] - errors[minima[0]][1]),
                              (errors[maxima[0]][0] - e[0], errors[maxima[0]][1] - e[1])):
                if less(best, candidate):
                    best = candidate
        per_letter[letter] = FieldElement(*best, target.c, radicand)
    return DiscrepancyReport(scope="factors", n_max=n_max, per_letter=per_letter)


def detect_period(w: Word) -> Optional[int]:
    """Least p with w_i = w_{i+p} throughout, reported only when |w| >= 3p"""
    n = len(w)
    if n < 2:
        raise RangeError(f"period detection needs at least 2 letters, got {n}")
    letters = w.letters
    border = [0] * n
    k = 0
    for i in range(1, n):
        while k and letters[i] != letters[k]:
            k = border[k - 1]
        if letters[i] == letters[k]:
            k += 1
        border[i] = k
    p = n - border[-1]
    return p if n >= 3 * p else None


def window_count_violation(w: Word, letter: int, alpha: FieldElement, n_max: int) -> Optional[Tuple[int, int]]:
    """First (n, count) where a factor of length n holds a count outside {floor(alpha n), ceil(alpha n)}"""
    _check_window(w, n_max)
    row = w.prefix_counts()[w.alphabet.index(letter)]
    for n in range(1, n_max + 1):
        windows = row[n:] - row[:-n]
        low, high = math.floor(n * alpha), math.ceil(n * alpha)
        lo, hi = int(windows.min()), int(windows.max())
        if lo < low:
            return n, lo
        if hi > high:
            return n, hi
    return None


def collect_metrics(
    w: Word,
    n_max: int,
    balance: bool = True,
    complexity: bool = True,
    frequencies: bool = True,
    target: Optional[FrequencyVector] = None,
    period: bool = False,
    title: str = "analysis",
) -> MetricReport:
    """Run the selected analyzers and flatten them into (metric, letter, n, value) records"""
    report = MetricReport(title=title)
    report.add(MetricName.LENGTH, len(w))
    if balance:
        profile = balance_profile(w, n_max)
        report.notes.append(
            f"measured k over factors of length <= {n_max}: {profile.k} "
            "(a lower bound for the balance constant of the infinite sequence)"
        )
        for letter in profile.letters:
            for n in range(1, n_max + 1):
                report.add(MetricName.BALANCE, profile.delta(letter, n), letter=letter, n=n)
        report.add(MetricName.MEASURED_K, profile.k)
    if complexity:
        table = factor_complexity(w, n_max)
        for n, count in enumerate(table.counts):
            report.add(MetricName.COMPLEXITY, count, n=n)
    if frequencies:
        for letter, value in empirical_frequencies(w).items():
            report.add(MetricName.FREQUENCY, value, letter=letter)
    if target is not None:
        result = discrepancy(w, target)
        for letter, value in result.per_letter.items():
            report.add(MetricName.DISCREPANCY, value, letter=letter)
        report.add(MetricName.DISCREPANCY_MAX, result.b)
    if period:
        detected = detect_period(w)
        report.add(MetricName.PERIOD, detected if detected is not None else "none")
    return report


def window_counts_within(w: Word, letter: int, alpha: FieldElement, n_max: int) -> bool:
    """Every factor of length n <= n_max holds floor(alpha n) or ceil(alpha n) copies of letter"""
    return window_count_violation(w, letter, alpha, n_max) is None

from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from kbalance.exact_arith import ZERO, FieldElement


class MetricName(str, Enum):
    BALANCE = "balance"
    MEASURED_K = "measured_k"
    CERTIFIED_K = "certified_k"
    COMPLEXITY = "complexity"
    COMPLEXITY_BOUND = "complexity_bound"
    FREQUENCY = "frequency"
    TARGET_FREQUENCY = "target_frequency"
    DISCREPANCY = "discrepancy"
    DISCREPANCY_MAX = "discrepancy_max"
    PERIOD = "period"
    LENGTH = "length"


class BalanceProfile(BaseModel):
    """Per-letter deficiency delta_a(n) = max - min of |factor|_a over factors of length n.

    k is the measured balance constant: a lower bound for the stream's true k,
    taken over the factors seen in the analyzed word only.
    """

    letters: List[int]
    n_max: int
    deficiency: Dict[int, List[int]] = Field(default_factory=dict)

    def delta(self, letter: int, n: int) -> int:
        return self.deficiency[letter][n - 1]

    @property
    def k(self) -> int:
        return max((max(row) for row in self.deficiency.values() if row), default=0)

    def worst(self) -> Optional[Tuple[int, int]]:
        """(letter, n) where the measured k is first reached"""
        for letter in self.letters:
            for n, value in enumerate(self.deficiency[letter], start=1):
                if value == self.k:
                    return letter, n
        return None


class ComplexityTable(BaseModel):
    """counts[n] = number of distinct factors of length n, counts[0] = 1"""

    word_length: int
    counts: List[int]

    def c(self, n: int) -> int:
        return self.counts[n]


class DiscrepancyReport(BaseModel):
    """B_a = max | |w|_a - f_a |w| | over prefixes (scope "prefixes") or bounded factors"""

    scope: str = Field(default="prefixes", pattern="^(prefixes|factors)$")
    n_max: Optional[int] = None
    per_letter: Dict[int, FieldElement] = Field(default_factory=dict)

    @property
    def b(self) -> FieldElement:
        return max(self.per_letter.values(), default=ZERO)


class MetricRecord(BaseModel):
    """One CSV row: (metric, letter, n, value); value uses the exact value grammar"""

    metric: MetricName
    letter: Optional[int] = None
    n: Optional[int] = None
    value: str


class MetricReport(BaseModel):
    title: str
    notes: List[str] = []
    records: List[MetricRecord] = []

    def add(self, metric: MetricName, value, letter: Optional[int] = None, n: Optional[int] = None) -> None:
        self.records.append(MetricRecord(metric=metric, letter=letter, n=n, value=str(value)))

    def values(self, metric: MetricName) -> List[MetricRecord]:
        return [r for r in self.records if r.metric == metric]


class LemmaResult(BaseModel):
    """Outcome of one randomized or exhaustive verification run"""

    lemma: str
    trials: int
    passed: bool
    max_measured_k: Optional[int] = None
    failures: List[str] = []
    duration_ms: float = 0.0

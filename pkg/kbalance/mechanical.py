"""Lower mechanical words s_n = floor((n+1)*alpha + rho) - floor(n*alpha + rho).

Letter ``letter_a`` is emitted when s_n = 1 and ``letter_b`` when s_n = 0, so
``letter_a`` has frequency alpha. These are the 1-balanced binary words the
construction colours.
"""

import logging
import math
from typing import Optional

from pydantic import BaseModel, ConfigDict, model_validator

from kbalance.errors import AlphabetError, RangeError
from kbalance.exact_arith import ONE, ZERO, FieldElement, common_radicand, floor_quadratic, quadratic_sign, render
from kbalance.sequences import BINARY, LETTER_A, LETTER_B, Alphabet, SequenceStream

logger = logging.getLogger(__name__)


class MechanicalParams(BaseModel):
    """Slope alpha in (0, 1), intercept rho in [0, 1), and the two output letters"""

    model_config = ConfigDict(frozen=True)

    alpha: FieldElement
    rho: FieldElement = ZERO
    letter_a: int = LETTER_A
    letter_b: int = LETTER_B

    @model_validator(mode="after")
    def _check_ranges(self):
        if not ZERO < self.alpha < ONE:
            raise RangeError(f"alpha must lie in (0, 1), got {render(self.alpha)}")
        if not ZERO <= self.rho < ONE:
            raise RangeError(f"rho must lie in [0, 1), got {render(self.rho)}")
        if self.letter_a == self.letter_b:
            raise AlphabetError("letter_a and letter_b must differ")
        common_radicand([self.alpha, self.rho])
        return self

    @property
    def alphabet(self) -> Alphabet:
        if (self.letter_a, self.letter_b) == BINARY.symbols:
            return BINARY
        return Alphabet((self.letter_a, self.letter_b))


def mechanical_symbol(p: MechanicalParams, n: int) -> int:
    """Symbol at index n, evaluated from scratch with two exact floors"""
    if n < 0:
        raise RangeError(f"index must be non-negative, got {n}")
    s = math.floor((n + 1) * p.alpha + p.rho) - math.floor(n * p.alpha + p.rho)
    return p.letter_a if s == 1 else p.letter_b


class MechanicalStream(SequenceStream):
    """Emits the mechanical word while carrying floor(n*alpha + rho) forward.

    n*alpha + rho is kept as (A + B*sqrt(D)) / C with integer A, B, so each
    step costs one exact sign test instead of two floors.
    """

    def __init__(self, params: MechanicalParams):
        super().__init__(params.alphabet)
        self.params = params
        alpha, rho = params.alpha, params.rho
        self._radicand = common_radicand([alpha, rho])
        self._scale = math.lcm(alpha.c, rho.c)
        self._step = (alpha.a * (self._scale // alpha.c), alpha.b * (self._scale // alpha.c))
        self._num = (rho.a * (self._scale // rho.c), rho.b * (self._scale // rho.c))
        self._floor = floor_quadratic(*self._num, self._radicand) // self._scale

    def _emit(self) -> int:
        a = self._num[0] + self._step[0]
        b = self._num[1] + self._step[1]
        self._num = (a, b)
        # 0 < alpha < 1, so the floor either stays or grows by one
        if quadratic_sign(a - (self._floor + 1) * self._scale, b, self._radicand) >= 0:
            self._floor += 1
            return self.params.letter_a
        return self.params.letter_b


def mechanical_stream(p: MechanicalParams) -> MechanicalStream:
    logger.debug(f"[Mechanical] Stream alpha={render(p.alpha)} rho={render(p.rho)}")
    return MechanicalStream(p)


def is_periodic(p: MechanicalParams) -> bool:
    """Rational slope gives a purely periodic word; irrational slope a Sturmian one"""
    return p.alpha.is_rational


def period(p: MechanicalParams) -> Optional[int]:
    """Least period q of the word for alpha = p/q in lowest terms, None when Sturmian"""
    return p.alpha.c if is_periodic(p) else None

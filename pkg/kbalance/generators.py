"""Inline stream specifications: ``kind:body[@offset]``.

    mech:ALPHA[:RHO]    mechanical word (letters offset, offset+1)
    gap:PERIOD          period^omega of a constant gap period
    build:F1,F2,...     the balanced construction over letters 1..d
    const:LETTER        LETTER^omega

``@offset`` shifts every letter so sub-streams of a colouring get disjoint
alphabets.
"""

import logging
import re
from typing import Literal

from pydantic import BaseModel, ConfigDict

from kbalance.builder import build_stream, certified_k, plan
from kbalance.constant_gap import GapSpec, gap_stream
from kbalance.errors import GrammarError
from kbalance.exact_arith import ZERO, parse
from kbalance.mechanical import MechanicalParams, mechanical_stream
from kbalance.sequences import LETTER_A, ConstantStream, FrequencyVector, SequenceStream, Word, relabel

logger = logging.getLogger(__name__)

_GENERATOR_FORMAT = re.compile(r"\A(?P<kind>mech|gap|build|const):(?P<body>[^@]+)(?:@(?P<offset>\d+))?\Z")


class GeneratorSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["mech", "gap", "build", "const"]
    body: str
    offset: int = 0

    def render(self) -> str:
        return f"{self.kind}:{self.body}" + (f"@{self.offset}" if self.offset else "")

    def mechanical_params(self) -> MechanicalParams:
        alpha, _, rho = self.body.partition(":")
        return MechanicalParams(
            alpha=parse(alpha),
            rho=parse(rho) if rho else ZERO,
            letter_a=LETTER_A + self.offset,
            letter_b=LETTER_A + self.offset + 1,
        )

    def gap_spec(self) -> GapSpec:
        return GapSpec(period=Word.parse(self.body).letters)

    def frequencies(self) -> FrequencyVector:
        return FrequencyVector.parse(self.body)

    @property
    def known_balance(self) -> int:
        """Balance constant this generator is proven to satisfy"""
        if self.kind == "mech":
            return 1
        if self.kind == "gap":
            return 0 if len(set(self.gap_spec().period)) == 1 else 1
        if self.kind == "build":
            return certified_k(self.frequencies().d)
        return 0

    def open(self) -> SequenceStream:
        """A fresh stream; call again for an independent copy"""
        if self.kind == "mech":
            return mechanical_stream(self.mechanical_params())
        if self.kind == "gap":
            stream = gap_stream(self.gap_spec())
        elif self.kind == "build":
            stream = build_stream(plan(self.frequencies()))
        else:
            try:
                stream = ConstantStream(int(self.body))
            except ValueError:
                raise GrammarError(f"const needs an integer letter, got {self.body!r}") from None
        return relabel(stream, self.offset)


def parse_generator(text: str) -> GeneratorSpec:
    compact = "".join(text.split())
    m = _GENERATOR_FORMAT.match(compact)
    if m is None:
        raise GrammarError(f"malformed generator {text!r}; expected kind:body[@offset] with kind mech|gap|build|const")
    return GeneratorSpec(kind=m.group("kind"), body=m.group("body"), offset=int(m.group("offset") or 0))


def open_stream(spec: GeneratorSpec) -> SequenceStream:
    stream = spec.open()
    logger.debug(f"[Generator] Opened {spec.render()} over {stream.alphabet.symbols}")
    return stream

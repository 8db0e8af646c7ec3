"""Recursive construction of a ceil(log2 d)-balanced sequence with given letter frequencies.

The letters are split into a left block of ceil(m/2) letters and a right block
of the rest. alpha is the left block's share of the node's mass; a mechanical
word of slope alpha decides, position by position, which block's sub-sequence
supplies the next letter. A single letter is the constant sequence.
"""

import logging
import time
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict

from kbalance.colouring import colour
from kbalance.errors import InvariantViolation, RangeError
from kbalance.exact_arith import ONE, FieldElement, render
from kbalance.mechanical import MechanicalParams, mechanical_stream
from kbalance.sequences import ConstantStream, FrequencyVector, SequenceStream, Word, take_prefix

logger = logging.getLogger(__name__)


class PlanNode(BaseModel):
    """Node of the recursion tree; a leaf carries exactly one letter"""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[int, ...]
    frequencies: Dict[int, FieldElement]
    alpha: Optional[FieldElement] = None
    mechanical: Optional[MechanicalParams] = None
    left: Optional["PlanNode"] = None
    right: Optional["PlanNode"] = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None


PlanNode.model_rebuild()


class BuildPlan(BaseModel):
    model_config = ConfigDict(frozen=True)

    frequencies: FrequencyVector
    root: PlanNode

    @property
    def d(self) -> int:
        return self.frequencies.d


def _plan_node(letters: Tuple[int, ...], frequencies: Dict[int, FieldElement]) -> PlanNode:
    values = [frequencies[x] for x in letters]
    if sum(values[1:], values[0]) != ONE:
        raise InvariantViolation(f"normalised frequencies of block {letters} do not sum to 1")
    if len(letters) == 1:
        return PlanNode(letters=letters, frequencies=frequencies)

    split = (len(letters) + 1) // 2
    left, right = letters[:split], letters[split:]
    alpha = sum((frequencies[x] for x in left[1:]), frequencies[left[0]])
    left_freqs = {x: frequencies[x] / alpha for x in left}
    right_freqs = {x: frequencies[x] / (ONE - alpha) for x in right}
    return PlanNode(
        letters=letters,
        frequencies=frequencies,
        alpha=alpha,
        mechanical=MechanicalParams(alpha=alpha),
        left=_plan_node(left, left_freqs),
        right=_plan_node(right, right_freqs),
    )


def plan(f: FrequencyVector) -> BuildPlan:
    """Recursion tree with exact alpha at every internal node"""
    root = _plan_node(tuple(f.entries), dict(f.entries))
    logger.info(f"[Builder] Planned d={f.d} depth={depth_of(root)} for f=({f.render()})")
    return BuildPlan(frequencies=f, root=root)


def _node_stream(node: PlanNode) -> SequenceStream:
    if node.is_leaf:
        return ConstantStream(node.letters[0])
    return colour(mechanical_stream(node.mechanical), _node_stream(node.left), _node_stream(node.right))


def build_stream(p: BuildPlan) -> SequenceStream:
    return _node_stream(p.root)


def build_prefix(f: FrequencyVector, n: int) -> Word:
    """First n letters of the constructed sequence for f"""
    start_time = time.time()
    word = take_prefix(build_stream(plan(f)), n)
    logger.info(f"[Builder] Built prefix of length {n} in {time.time() - start_time:.2f}s")
    return word


def certified_k(d: int) -> int:
    """ceil(log2 d): the balance constant the construction guarantees"""
    if d < 1:
        raise RangeError(f"alphabet size must be at least 1, got {d}")
    return (d - 1).bit_length()


def complexity_bound(d: int, n: int) -> int:
    """(n+1)^(d-1), the proven bound on the number of factors of length n"""
    if d < 1 or n < 0:
        raise RangeError(f"need d >= 1 and n >= 0, got d={d}, n={n}")
    return (n + 1) ** (d - 1)


def depth_of(node: PlanNode) -> int:
    if node.is_leaf:
        return 0
    return 1 + max(depth_of(node.left), depth_of(node.right))


def describe(p: BuildPlan) -> str:
    """Indented text rendering of the recursion tree"""
    lines: List[str] = []

    def walk(node: PlanNode, indent: int) -> None:
        pad = "  " * indent
        if node.is_leaf:
            lines.append(f"{pad}leaf {node.letters[0]}")
            return
        split = len(node.left.letters)
        lines.append(
            f"{pad}node {list(node.letters[:split])} | {list(node.letters[split:])} alpha={render(node.alpha)}"
        )
        walk(node.left, indent + 1)
        walk(node.right, indent + 1)

    walk(p.root, 0)
    return "\n".join(lines)

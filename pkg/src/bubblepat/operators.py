"""Sorting-pass operators: one pass of bubble sort (B) and one pass through a
stack (S), with powers and compositions."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Sequence

from bubblepat import kernels
from bubblepat.errors import ParseError
from bubblepat.perm import Perm, lr_decompose


def bubble_recursive(p: Sequence[int]) -> Perm:
    """Reference definition: split at the maximum m as ``s1 m s2`` and return
    ``B(s1) s2 m``."""
    p = tuple(p)
    if not p:
        return ()
    i = p.index(max(p))
    return bubble_recursive(p[:i]) + p[i + 1 :] + (p[i],)


def bubble_splice(p: Sequence[int]) -> Perm:
    """Production definition: move every left-to-right maximum past the gap
    that follows it.  Single scan, done by the kernel."""
    return kernels.bubble(tuple(p))


def bubble_splice_decomposed(p: Sequence[int]) -> Perm:
    """The same splice written against an explicit LR decomposition.  Slow;
    kept as readable documentation of the kernel and used in tests."""
    if not p:
        return ()
    d = lr_decompose(p)
    out: list[int] = []
    for m, gap in zip(d.maxima, d.gaps):
        out.extend(gap)
        out.append(m)
    return tuple(out)


def bubble_k(p: Sequence[int], k: int) -> Perm:
    if k < 0:
        raise ValueError("number of passes must be non-negative")
    return kernels.bubble_power(tuple(p), k)


def stack_pass(p: Sequence[int]) -> Perm:
    return kernels.stack_pass(tuple(p))


class Op(enum.Enum):
    BubblePass = "B"
    StackPass = "S"


_APPLY = {Op.BubblePass: bubble_splice, Op.StackPass: stack_pass}

_CHAIN_TOKEN = re.compile(r"([BS])(?:\^(\d+))?")


@dataclass(frozen=True)
class OperatorChain:
    """Operators in application order (the rightmost letter of the written
    chain comes first: ``"SB"`` means B, then S)."""

    steps: tuple[Op, ...]

    def __post_init__(self):
        if not self.steps:
            raise ValueError("an operator chain needs at least one step")

    @classmethod
    def parse(cls, text: str) -> "OperatorChain":
        """Parse chain syntax such as ``"SB"``, ``"B^3"`` or ``"SB^2"``."""
        compact = "".join(text.split())
        if not compact:
            raise ParseError("empty operator chain", position=1)
        written: list[Op] = []
        pos = 0
        while pos < len(compact):
            m = _CHAIN_TOKEN.match(compact, pos)
            if m is None:
                raise ParseError(
                    f"unexpected {compact[pos]!r} in operator chain", position=pos + 1
                )
            op = Op(m.group(1))
            written.extend([op] * int(m.group(2) or 1))
            pos = m.end()
        if not written:
            raise ParseError("operator chain has no passes (power 0)", position=1)
        return cls(tuple(reversed(written)))

    def __str__(self) -> str:
        return "".join(op.value for op in reversed(self.steps))

    def __pow__(self, k: int) -> "OperatorChain":
        return OperatorChain(self.steps * k)


def apply_chain(p: Sequence[int], chain: OperatorChain | str) -> Perm:
    return trace_chain(p, chain)[-1]


def trace_chain(p: Sequence[int], chain: OperatorChain | str) -> list[Perm]:
    """The input followed by the image after each step."""
    if isinstance(chain, str):
        chain = OperatorChain.parse(chain)
    out = [tuple(p)]
    for op in chain.steps:
        out.append(_APPLY[op](out[-1]))
    return out

"""Case analysis of a pattern pi by its left-to-right maxima, deciding which
construction describes the preimage class {s : B(s) avoids pi}, plus the
witness pairs showing that preimage is not closed downward."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from bubblepat import kernels
from bubblepat.errors import (
    EmptyPermutation,
    EndsWithMax,
    IsGoodPermutation,
    WitnessError,
)
from bubblepat.perm import Perm, format_perm, lr_maxima_positions


class Case(enum.Enum):
    EmptyClass = "EmptyClass"
    SingletonClass = "SingletonClass"
    OneLr = "OneLr"
    TwoLrEndsMax = "TwoLrEndsMax"
    TwoLrGeneral = "TwoLrGeneral"
    ThreeLrReducible = "ThreeLrReducible"
    ThreeLrSpecial = "ThreeLrSpecial"
    NotAClass = "NotAClass"


@dataclass(frozen=True)
class ThreePartDecomposition:
    """``a alpha b beta c gamma [trailing_max]`` with a, b, c the first
    left-to-right maxima.  Absent parts are None."""

    a: int
    alpha: tuple[int, ...]
    b: int | None = None
    beta: tuple[int, ...] | None = None
    c: int | None = None
    gamma: tuple[int, ...] | None = None
    trailing_max: int | None = None

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "alpha": list(self.alpha),
            "b": self.b,
            "beta": None if self.beta is None else list(self.beta),
            "c": self.c,
            "gamma": None if self.gamma is None else list(self.gamma),
        }


@dataclass(frozen=True)
class Classification:
    perm: Perm
    case: Case
    decomposition: ThreePartDecomposition | None = None
    reduced: Perm | None = None
    lr_positions: tuple[int, ...] = field(default=())  # 1-based

    @property
    def good(self) -> bool:
        return self.case is not Case.NotAClass

    def to_json(self) -> dict:
        return {
            "perm": format_perm(self.perm),
            "case": self.case.value,
            "lr_maxima_positions": list(self.lr_positions),
            "decomposition": None if self.decomposition is None else self.decomposition.to_json(),
            "reduced": None if self.reduced is None else format_perm(self.reduced),
            "good": self.good,
        }


def classify(p: Sequence[int]) -> Classification:
    p = tuple(p)
    if not p:
        raise EmptyPermutation("cannot classify the empty permutation")
    lr = lr_maxima_positions(p)
    positions = tuple(i + 1 for i in lr)
    n = len(p)
    if n == 1:
        return Classification(p, Case.EmptyClass, lr_positions=positions)
    if p == (1, 2):
        return Classification(p, Case.SingletonClass, lr_positions=positions)

    k = len(lr)
    if k == 1:
        d = ThreePartDecomposition(a=p[0], alpha=p[1:])
        return Classification(p, Case.OneLr, d, lr_positions=positions)
    if k == 2:
        ib = lr[1]
        d = ThreePartDecomposition(a=p[0], alpha=p[1:ib], b=p[ib], beta=p[ib + 1 :])
        if ib == n - 1:
            # pi = m alpha n reduces to m alpha, which begins with its maximum
            return Classification(p, Case.TwoLrEndsMax, d, reduced=p[:-1], lr_positions=positions)
        return Classification(p, Case.TwoLrGeneral, d, lr_positions=positions)
    if k == 3 and lr[2] == n - 1:
        ib = lr[1]
        d = ThreePartDecomposition(
            a=p[0], alpha=p[1:ib], b=p[ib], beta=p[ib + 1 : n - 1], c=p[-1], gamma=()
        )
        if d.beta:
            return Classification(
                p, Case.ThreeLrReducible, d, reduced=p[:-1], lr_positions=positions
            )
        return Classification(p, Case.ThreeLrSpecial, d, lr_positions=positions)

    return Classification(
        p, Case.NotAClass, _bad_decomposition(_normalize(p)), lr_positions=positions
    )


def is_good(p: Sequence[int]) -> bool:
    return classify(p).good


def append_max(p: Sequence[int]) -> Perm:
    """Append n+1; only meaningful when p does not already end with n."""
    p = tuple(p)
    if p and p[-1] == len(p):
        raise EndsWithMax(f"{format_perm(p)} already ends with its maximum")
    return p + (len(p) + 1,)


def _normalize(p: Perm) -> Perm:
    return p if p[-1] == len(p) else append_max(p)


def _bad_decomposition(q: Perm) -> ThreePartDecomposition:
    # q ends with its maximum and has >= 3 LR maxima, the third not final
    lr = lr_maxima_positions(q)
    ia, ib, ic = lr[:3]
    return ThreePartDecomposition(
        a=q[ia],
        alpha=q[ia + 1 : ib],
        b=q[ib],
        beta=q[ib + 1 : ic],
        c=q[ic],
        gamma=q[ic + 1 : -1],
        trailing_max=q[-1],
    )


@dataclass(frozen=True)
class WitnessPair:
    """theta1 is contained in theta2, yet B(theta1) contains pi while
    B(theta2) avoids it."""

    theta1: Perm
    theta2: Perm

    def to_json(self) -> dict:
        return {"theta1": format_perm(self.theta1), "theta2": format_perm(self.theta2)}


def check_witness(p: Sequence[int], w: WitnessPair) -> bool:
    p = tuple(p)
    return (
        kernels.contains(w.theta2, w.theta1)
        and kernels.contains(kernels.bubble(w.theta1), p)
        and not kernels.contains(kernels.bubble(w.theta2), p)
    )


def witness_pair(p: Sequence[int]) -> WitnessPair:
    """Build (theta1, theta2) for a permutation that is not good.

    With pi (after appending a new maximum if needed) written as
    ``a alpha b beta c gamma n``, theta1 = ``b a alpha n beta c gamma`` and
    theta2 prefixes theta1 with n+1.
    """
    cl = classify(p)
    if cl.good:
        raise IsGoodPermutation(
            f"{format_perm(cl.perm)} is good ({cl.case.value}); no witness exists"
        )
    d = cl.decomposition
    n = d.trailing_max
    theta1 = (d.b, d.a) + d.alpha + (n,) + d.beta + (d.c,) + d.gamma
    w = WitnessPair(theta1=theta1, theta2=(n + 1,) + theta1)
    if not check_witness(cl.perm, w):
        raise WitnessError(
            f"witness {w.theta1}/{w.theta2} for {format_perm(cl.perm)} failed verification"
        )
    return w

"""Explicit bases of the preimage classes {s : B(s) avoids pi} for good pi,
and of intersections of such classes."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from bubblepat import oracle
from bubblepat.classification import (
    Case,
    Classification,
    WitnessPair,
    classify,
    witness_pair,
)
from bubblepat.errors import ContainsBadPermutation, NotADownset, WrongCase
from bubblepat.perm import (
    Perm,
    format_perm,
    is_antichain,
    lr_maxima_positions,
    minimal_elements,
    sort_perms,
    standardize,
)

CROSS_CHECK_MAX_LENGTH = 5


def basis_one_lr(p: Sequence[int]) -> set[Perm]:
    """pi = n alpha: the new maximum goes right after or right before n."""
    p = tuple(p)
    if len(p) < 2 or len(lr_maxima_positions(p)) != 1:
        raise WrongCase(f"{format_perm(p)} does not begin with its maximum")
    n = len(p)
    alpha = p[1:]
    return {(n, n + 1) + alpha, (n + 1, n) + alpha}


def _two_lr_parts(p: Perm) -> tuple[int, Perm, int, Perm]:
    lr = lr_maxima_positions(p)
    if len(lr) != 2 or lr[1] == len(p) - 1:
        raise WrongCase(
            f"{format_perm(p)} needs exactly two left-to-right maxima and must not end with its maximum"
        )
    ib = lr[1]
    return p[0], p[1:ib], p[ib], p[ib + 1 :]


class Side(enum.Enum):
    BeforeA = "BeforeA"
    AfterA = "AfterA"


@dataclass(frozen=True)
class RExtension:
    """One member of R(pi) for pi = a lam b mu, realized as
    ``a x lam1 y lam2 z mu`` or ``x a lam1 y lam2 z mu``.

    z takes the role of b; {y, z} are the two largest values.  A coalesced
    extension has x and y as a single point placed next to a.
    """

    x_side: Side
    x_value_rank: int  # x sits just above this many of the values >= a among a, mu
    y_gap_index: int  # len(lam1)
    y_above_z: bool
    coalesced: bool

    def realize(self, p: Perm) -> Perm:
        a, lam, b, mu = _two_lr_parts(p)
        z = Fraction(b)
        y = z + 1 if self.y_above_z else z - Fraction(1, 2)
        lam1, lam2 = lam[: self.y_gap_index], lam[self.y_gap_index :]
        if self.coalesced:
            head = (a, y) if self.x_side is Side.AfterA else (y, a)
            return standardize(head + lam + (z,) + mu)
        anchors = sorted([a] + [m for m in mu if m > a])
        x = anchors[self.x_value_rank] + Fraction(1, 4)
        head = (a, x) if self.x_side is Side.AfterA else (x, a)
        return standardize(head + lam1 + (y,) + lam2 + (z,) + mu)


def r_extensions(p: Sequence[int]) -> Iterator[RExtension]:
    """Every admissible extension descriptor for pi = a lam b mu (mu non-empty)."""
    p = tuple(p)
    a, lam, _, mu = _two_lr_parts(p)
    x_ranks = range(1 + sum(1 for m in mu if m > a))
    for y_above_z in (True, False):
        for side in Side:
            yield RExtension(side, 0, 0, y_above_z, coalesced=True)
            for gap in range(len(lam) + 1):
                if side is Side.AfterA and gap == 0:
                    # x after a with nothing between x and y: they must coincide
                    continue
                for r in x_ranks:
                    yield RExtension(side, r, gap, y_above_z, coalesced=False)


def generate_R(p: Sequence[int]) -> set[Perm]:
    p = tuple(p)
    return {ext.realize(p) for ext in r_extensions(p)}


def basis_two_lr(p: Sequence[int]) -> set[Perm]:
    return minimal_elements(generate_R(p))


def basis_special_three(p: Sequence[int]) -> set[Perm]:
    """pi = (n-2) alpha (n-1) n."""
    p = tuple(p)
    n = len(p)
    lr = lr_maxima_positions(p)
    if len(lr) != 3 or lr[2] != n - 1 or lr[1] != n - 2:
        raise WrongCase(f"{format_perm(p)} is not of the form (n-2) alpha (n-1) n")
    alpha = p[1:-2]
    top2, top1 = n - 2, n - 1
    return {
        (top2, top1) + alpha + (n,),
        (top1, top2) + alpha + (n,),
        (top2, n) + alpha + (top1,),
        (n, top2) + alpha + (top1,),
    }


@dataclass(frozen=True)
class BasisResult:
    outcome: str  # "Basis" or "NotAClass"
    case_used: Classification
    basis: frozenset[Perm] | None = None
    witness: WitnessPair | None = None
    cross_checked: bool = False
    inputs: tuple[Perm, ...] = ()

    @property
    def is_class(self) -> bool:
        return self.outcome == "Basis"

    def sorted_basis(self) -> list[Perm]:
        return sort_perms(self.basis or ())

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome,
            "basis": None if self.basis is None else [format_perm(b) for b in self.sorted_basis()],
            "witness": None if self.witness is None else self.witness.to_json(),
            "case_used": None if self.case_used is None else self.case_used.case.value,
            "cross_checked": self.cross_checked,
        }


def constructive_basis(cl: Classification) -> set[Perm]:
    """Basis from the case analysis alone, without any oracle."""
    p = cl.perm
    case = cl.case
    if case is Case.EmptyClass:
        return {(1,)}
    if case is Case.SingletonClass:
        return {(1, 2), (2, 1)}
    if case is Case.OneLr:
        return basis_one_lr(p)
    if case is Case.TwoLrEndsMax:
        return basis_one_lr(cl.reduced)
    if case is Case.TwoLrGeneral:
        return basis_two_lr(p)
    if case is Case.ThreeLrReducible:
        return constructive_basis(classify(cl.reduced))
    if case is Case.ThreeLrSpecial:
        return basis_special_three(p)
    raise WrongCase(f"{format_perm(p)} is not good; it has no basis")


def _matches_oracle(patterns: list[Perm], basis: set[Perm], horizon: int, workers: int) -> bool:
    try:
        empirical = oracle.empirical_basis_set(patterns, horizon, workers)
    except NotADownset:
        return False
    return empirical == {b for b in basis if len(b) <= horizon}


def inverse_basis(
    p: Sequence[int],
    cross_check: bool | None = None,
    horizon: int | None = None,
    workers: int = 1,
) -> BasisResult:
    """Basis of {s : B(s) avoids p}, or a witness that it is not a class.

    ``cross_check`` defaults to on for |p| <= 5; the oracle horizon defaults
    to |p| + 3.
    """
    p = tuple(p)
    cl = classify(p)
    if cross_check is None:
        cross_check = len(p) <= CROSS_CHECK_MAX_LENGTH
    if horizon is None:
        horizon = len(p) + 3
    if not cl.good:
        w = witness_pair(p)
        checked = False
        if cross_check:
            checked = not oracle.downset_check(p, horizon, workers).is_downset
        return BasisResult("NotAClass", cl, witness=w, cross_checked=checked, inputs=(p,))
    basis = constructive_basis(cl)
    checked = cross_check and _matches_oracle([p], basis, horizon, workers)
    return BasisResult("Basis", cl, basis=frozenset(basis), cross_checked=checked, inputs=(p,))


def inverse_basis_set(
    ps: Iterable[Sequence[int]],
    cross_check: bool = False,
    horizon: int | None = None,
    workers: int = 1,
) -> BasisResult:
    """Basis of the intersection of the preimage classes of good patterns:
    the minimal elements of the union of their bases."""
    ps = sort_perms(ps)
    if not ps:
        raise ValueError("need at least one pattern")
    classes = [classify(p) for p in ps]
    for cl in classes:
        if not cl.good:
            raise ContainsBadPermutation(cl.perm)
    if len(ps) == 1:
        return inverse_basis(ps[0], cross_check=cross_check, horizon=horizon, workers=workers)
    union: set[Perm] = set()
    for cl in classes:
        union |= constructive_basis(cl)
    basis = minimal_elements(union)
    if horizon is None:
        horizon = max(len(p) for p in ps) + 3
    checked = cross_check and _matches_oracle(ps, basis, horizon, workers)
    return BasisResult(
        "Basis", classes[0], basis=frozenset(basis), cross_checked=checked, inputs=tuple(ps)
    )


def basis_is_antichain(result: BasisResult) -> bool:
    return result.basis is None or is_antichain(result.basis)

"""Permutations in one-line notation and the subpermutation order.

A permutation of length n is a plain tuple holding each of 1..n exactly once;
the empty tuple is the empty permutation.  Words (sequences of distinct
comparable values) are any sequences and are turned into permutations with
:func:`standardize`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from bubblepat import kernels
from bubblepat.errors import (
    DuplicateValue,
    EmptyPermutation,
    EmptyTokenStream,
    OutOfRange,
    ParseError,
)

Perm = tuple[int, ...]

_SEPARATORS = re.compile(r"[\s,]+")


def parse_permutation(text: str) -> Perm:
    """Read a permutation from one-line text.

    Accepts whitespace/comma separated integers (``"2 4 1 5 3"``) or a bare
    digit string (``"24153"``), the latter only for lengths up to 9.

    >>> parse_permutation("231")
    (2, 3, 1)
    >>> parse_permutation("10, 1 2 3 4 5 6 7 8 9")[:2]
    (10, 1)
    """
    stripped = text.strip()
    if not stripped:
        raise EmptyTokenStream("no permutation entries found", position=1)
    if stripped in ("()", "e", "ε", "-"):
        return ()
    if _SEPARATORS.search(stripped):
        tokens = [t for t in _SEPARATORS.split(stripped) if t]
    else:
        tokens = list(stripped)
    if not tokens:
        raise EmptyTokenStream("no permutation entries found", position=1)
    values = []
    for pos, token in enumerate(tokens, start=1):
        if not token.isdigit():
            raise ParseError(f"not a positive integer: {token!r}", position=pos)
        values.append(int(token))
    n = len(values)
    seen = set()
    for pos, v in enumerate(values, start=1):
        if v < 1 or v > n:
            raise OutOfRange(f"value {v} outside 1..{n}", position=pos)
        if v in seen:
            raise DuplicateValue(f"value {v} repeated", position=pos)
        seen.add(v)
    return tuple(values)


def parse_permutation_set(text: str) -> list[Perm]:
    """Read a comma-separated list of permutations such as ``"231,321"``.

    Tokens inside the list use the digit-string form (or space separation);
    whitespace around commas is ignored.
    """
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise EmptyTokenStream("empty permutation in list")
    return [parse_permutation(part) for part in parts]


def format_perm(p: Sequence[int], compact: bool = False) -> str:
    """One-line notation.  ``compact`` drops the spaces when every value is a
    single digit.

    >>> format_perm((2, 4, 1))
    '2 4 1'
    >>> format_perm((2, 4, 1), compact=True)
    '241'
    """
    if compact and all(0 <= v <= 9 for v in p):
        return "".join(map(str, p)) if p else "ε"
    return " ".join(map(str, p)) if p else "ε"


def is_permutation(values: Sequence[int]) -> bool:
    return sorted(values) == list(range(1, len(values) + 1))


def standardize(word: Sequence) -> Perm:
    """The permutation order isomorphic to a word of distinct values.

    >>> standardize((9, 2, 7, 5))
    (4, 1, 3, 2)
    """
    ranks = {v: r for r, v in enumerate(sorted(word), start=1)}
    if len(ranks) != len(word):
        raise DuplicateValue("word has repeated entries")
    return tuple(ranks[v] for v in word)


def contains(haystack: Sequence[int], needle: Sequence[int]) -> bool:
    """Whether ``needle`` is a subpermutation of ``haystack``."""
    return kernels.contains(tuple(haystack), tuple(needle))


def avoids(haystack: Sequence[int], basis: Iterable[Sequence[int]]) -> bool:
    return kernels.avoids_all(tuple(haystack), [tuple(b) for b in basis])


@dataclass(frozen=True)
class LrDecomposition:
    """The split ``n1 λ1 n2 λ2 ... nk λk`` at left-to-right maxima."""

    maxima: tuple[int, ...]
    gaps: tuple[tuple[int, ...], ...]
    positions: tuple[int, ...]  # 1-based

    def splice(self) -> Perm:
        out: list[int] = []
        for m, gap in zip(self.maxima, self.gaps):
            out.append(m)
            out.extend(gap)
        return tuple(out)

    def __len__(self) -> int:
        return len(self.maxima)


def lr_maxima_positions(p: Sequence[int]) -> list[int]:
    """0-based positions of the left-to-right maxima."""
    out = []
    best = None
    for i, v in enumerate(p):
        if best is None or v > best:
            best = v
            out.append(i)
    return out


def lr_decompose(p: Sequence[int]) -> LrDecomposition:
    if not p:
        raise EmptyPermutation("left-to-right decomposition of the empty permutation")
    idx = lr_maxima_positions(p)
    bounds = idx[1:] + [len(p)]
    return LrDecomposition(
        maxima=tuple(p[i] for i in idx),
        gaps=tuple(tuple(p[i + 1 : j]) for i, j in zip(idx, bounds)),
        positions=tuple(i + 1 for i in idx),
    )


def delete_at(p: Sequence[int], i: int) -> Perm:
    """Remove the entry at 0-based position ``i`` and standardize."""
    v = p[i]
    return tuple(w - 1 if w > v else w for j, w in enumerate(p) if j != i)


def one_point_deletions(p: Sequence[int]) -> set[Perm]:
    if not p:
        raise EmptyPermutation("cannot delete from the empty permutation")
    return {delete_at(p, i) for i in range(len(p))}


def minimal_elements(perms: Iterable[Sequence[int]]) -> set[Perm]:
    """Members that contain no other member (the antichain of minima)."""
    pool = sorted({tuple(p) for p in perms}, key=lambda q: (len(q), q))
    kept: list[Perm] = []
    for q in pool:
        # only strictly shorter members can be proper subpermutations
        if not any(len(m) < len(q) and kernels.contains(q, m) for m in kept):
            kept.append(q)
    return set(kept)


def is_antichain(perms: Iterable[Sequence[int]]) -> bool:
    items = [tuple(p) for p in set(map(tuple, perms))]
    for i, p in enumerate(items):
        for q in items[i + 1 :]:
            if kernels.contains(p, q) or kernels.contains(q, p):
                return False
    return True


def sort_perms(perms: Iterable[Sequence[int]]) -> list[Perm]:
    """Length-then-lexicographic order, used for every emitted set."""
    return sorted({tuple(p) for p in perms}, key=lambda q: (len(q), q))

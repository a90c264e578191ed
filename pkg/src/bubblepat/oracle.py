"""Brute-force ground truth over small symmetric groups.

Everything here is exhaustive and finite: enumeration of S_n, membership
scans of preimage sets, downset checks, empirical bases, class counts and
the k-pass sorting machinery.  Scans can be split across worker processes by
leading symbol; results are merged in lexicographic order, so output never
depends on the worker count.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from bubblepat import kernels
from bubblepat.errors import EmptySequence, HorizonExceeded, NotADownset
from bubblepat.operators import OperatorChain, apply_chain
from bubblepat.perm import Perm, delete_at, format_perm, minimal_elements, sort_perms

DEFAULT_HORIZON_CAP = 11


def horizon_cap() -> int:
    return int(os.environ.get("BUBBLEPAT_HORIZON_CAP", DEFAULT_HORIZON_CAP))


def check_horizon(n: int, cap: int | None = None) -> None:
    cap = horizon_cap() if cap is None else cap
    if n > cap:
        raise HorizonExceeded(n, cap)


def parallel_map(fn: Callable, items: Sequence, workers: int = 1) -> list:
    """``list(map(fn, items))``, optionally on a process pool.  Order of the
    results always follows ``items``."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


# --- enumeration -----------------------------------------------------------


def enumerate_sn(n: int, cap: int | None = None) -> Iterator[Perm]:
    """All n! permutations of length n in lexicographic order."""
    if n < 0:
        raise ValueError("length must be non-negative")
    check_horizon(n, cap)
    return permutations(range(1, n + 1))


def perms_with_lead(n: int, lead: int) -> Iterator[Perm]:
    """The lexicographic block of S_n whose first entry is ``lead``."""
    rest = [v for v in range(1, n + 1) if v != lead]
    head = (lead,)
    for tail in permutations(rest):
        yield head + tail


def _blocks(horizon: int) -> list[tuple[int, int]]:
    # (length, lead) pairs covering S_1..S_horizon in order
    return [(n, lead) for n in range(1, horizon + 1) for lead in range(1, n + 1)]


# --- preimage membership ---------------------------------------------------


def _image_function(chain: str) -> Callable[[Perm], Perm]:
    if chain == "B":
        return kernels.bubble
    parsed = OperatorChain.parse(chain)
    if all(op.value == "B" for op in parsed.steps):
        k = len(parsed.steps)
        return lambda s: kernels.bubble_power(s, k)
    return lambda s: apply_chain(s, parsed)


def in_inverse_class(sigma: Sequence[int], p: Sequence[int]) -> bool:
    """Whether B(sigma) avoids p."""
    return not kernels.contains(kernels.bubble(tuple(sigma)), tuple(p))


def _scan_block(args) -> list[Perm]:
    patterns, n, lead, chain = args
    image = _image_function(chain)
    avoids_all = kernels.avoids_all
    return [s for s in perms_with_lead(n, lead) if avoids_all(image(s), patterns)]


def preimage_levels(
    patterns: Iterable[Sequence[int]],
    horizon: int,
    chain: str = "B",
    workers: int = 1,
) -> list[set[Perm]]:
    """``levels[n]`` = {s in S_n : chain(s) avoids every pattern}, n = 0..horizon."""
    check_horizon(horizon)
    patterns = tuple(tuple(p) for p in patterns)
    blocks = _blocks(horizon)
    found = parallel_map(_scan_block, [(patterns, n, lead, chain) for n, lead in blocks], workers)
    levels: list[set[Perm]] = [set() for _ in range(horizon + 1)]
    if kernels.avoids_all((), patterns):
        levels[0].add(())
    for (n, _), members in zip(blocks, found):
        levels[n].update(members)
    return levels


@dataclass(frozen=True)
class DownsetReport:
    """Outcome of a closure check.  ``violation`` is ``(tau, sigma)`` with tau
    a one-point deletion of sigma, sigma in the set and tau outside it."""

    is_downset: bool
    horizon: int
    violation: tuple[Perm, Perm] | None = None

    def to_json(self) -> dict:
        return {
            "is_downset": self.is_downset,
            "horizon": self.horizon,
            "violation": None
            if self.violation is None
            else {"tau": format_perm(self.violation[0]), "sigma": format_perm(self.violation[1])},
        }


def downset_report(levels: list[set[Perm]]) -> DownsetReport:
    """Scan members by length then lexicographically; report the first
    member with a deletion outside the set."""
    horizon = len(levels) - 1
    for n in range(1, horizon + 1):
        below = levels[n - 1]
        missing = kernels.first_missing_deletion
        for sigma in sorted(levels[n]):
            i = missing(sigma, below)
            if i >= 0:
                return DownsetReport(False, horizon, (delete_at(sigma, i), sigma))
    return DownsetReport(True, horizon)


def check_set_class(
    ps: Iterable[Sequence[int]], horizon: int, workers: int = 1
) -> DownsetReport:
    """Is {s : B(s) avoids every member of ps} closed downward up to horizon?"""
    ps = [tuple(p) for p in ps]
    if not ps:
        raise ValueError("need at least one pattern")
    return downset_report(preimage_levels(ps, horizon, workers=workers))


def downset_check(p: Sequence[int], horizon: int, workers: int = 1) -> DownsetReport:
    return check_set_class([p], horizon, workers)


def basis_from_levels(levels: list[set[Perm]]) -> set[Perm]:
    """Minimal non-members, given levels of a downset: a non-member is
    minimal iff all its one-point deletions are members."""
    out: set[Perm] = set()
    for n in range(1, len(levels)):
        members = levels[n]
        below = levels[n - 1]
        for sigma in permutations(range(1, n + 1)):
            if sigma in members:
                continue
            if kernels.first_missing_deletion(sigma, below) < 0:
                out.add(sigma)
    return out


def empirical_basis_set(
    ps: Iterable[Sequence[int]], horizon: int, workers: int = 1
) -> set[Perm]:
    levels = preimage_levels(ps, horizon, workers=workers)
    report = downset_report(levels)
    if not report.is_downset:
        tau, sigma = report.violation
        raise NotADownset(
            f"preimage is not a class: {format_perm(sigma)} is in it "
            f"but {format_perm(tau)} is not"
        )
    return basis_from_levels(levels)


def empirical_basis(p: Sequence[int], horizon: int, workers: int = 1) -> set[Perm]:
    """Basis elements of length <= horizon of {s : B(s) avoids p}, found by
    brute force."""
    return empirical_basis_set([p], horizon, workers)


# --- counting ----------------------------------------------------------------


@dataclass(frozen=True)
class ClassSpec:
    """Av(basis); the basis is reduced to its minimal elements."""

    basis: frozenset[Perm]

    def __init__(self, basis: Iterable[Sequence[int]]):
        object.__setattr__(self, "basis", frozenset(minimal_elements(basis)))

    def key(self) -> str:
        return ";".join(sorted(format_perm(b) for b in self.basis))

    def ordered(self) -> list[Perm]:
        return sort_perms(self.basis)

    def __contains__(self, sigma) -> bool:
        return kernels.avoids_all(tuple(sigma), self.ordered())


@dataclass(frozen=True)
class CountSequence:
    counts: dict[int, int]
    growth_points: tuple[float, ...] = field(default=())

    @classmethod
    def from_counts(cls, counts: dict[int, int]) -> "CountSequence":
        ordered = dict(sorted(counts.items()))
        return cls(ordered, tuple(c ** (1.0 / n) for n, c in ordered.items()))

    def values(self) -> list[int]:
        return list(self.counts.values())

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count", "root"])
        for (n, c), r in zip(self.counts.items(), self.growth_points):
            w.writerow([n, c, f"{r:.6f}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CountSequence":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls.from_counts({int(r["n"]): int(r["count"]) for r in rows})


def _extensions(parent: Perm) -> Iterator[Perm]:
    # one-point right extensions: append each new last value j in 1..n+1
    for j in range(1, len(parent) + 2):
        yield tuple(v + 1 if v >= j else v for v in parent) + (j,)


def _count_subtree(args) -> list[int]:
    root, basis, horizon = args
    counts = [0] * (horizon + 1)
    avoids_all = kernels.avoids_all
    stack = [root]
    while stack:
        node = stack.pop()
        counts[len(node)] += 1
        if len(node) < horizon:
            for child in _extensions(node):
                # the parent avoids the basis, so only occurrences using the new point matter
                if avoids_all(child, basis, True):
                    stack.append(child)
    return counts


def count_av(
    spec: ClassSpec | Iterable[Sequence[int]],
    horizon: int,
    workers: int = 1,
    cache_dir: str | os.PathLike | None = None,
) -> CountSequence:
    """Exact |Av(basis) ∩ S_n| for n = 1..horizon via the insertion tree."""
    if not isinstance(spec, ClassSpec):
        spec = ClassSpec(spec)
    check_horizon(horizon)
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if cache_dir is not None:
        cached = load_cached_counts(cache_dir, spec, horizon)
        if cached is not None:
            return cached
    basis = spec.ordered()
    # grow the tree serially to a shallow frontier, then split its subtrees
    depth = min(horizon, 3)
    totals = [0] * (horizon + 1)
    frontier = [()]
    for _ in range(depth):
        nxt = []
        for node in frontier:
            totals[len(node)] += 1
            nxt.extend(c for c in _extensions(node) if kernels.avoids_all(c, basis, True))
        frontier = nxt
    for sub in parallel_map(_count_subtree, [(r, basis, horizon) for r in frontier], workers):
        for n, c in enumerate(sub):
            totals[n] += c
    result = CountSequence.from_counts({n: totals[n] for n in range(1, horizon + 1)})
    if cache_dir is not None:
        store_cached_counts(cache_dir, spec, result)
    return result


def count_av_naive(spec: ClassSpec | Iterable[Sequence[int]], horizon: int) -> CountSequence:
    """Filter every permutation; the cross-check for :func:`count_av`."""
    if not isinstance(spec, ClassSpec):
        spec = ClassSpec(spec)
    check_horizon(horizon)
    basis = spec.ordered()
    return CountSequence.from_counts(
        {
            n: sum(1 for s in permutations(range(1, n + 1)) if kernels.avoids_all(s, basis))
            for n in range(1, horizon + 1)
        }
    )


def cache_path(cache_dir: str | os.PathLike, spec: ClassSpec) -> Path:
    return Path(cache_dir) / (spec.key().replace(" ", "_") + ".csv")


def load_cached_counts(
    cache_dir: str | os.PathLike, spec: ClassSpec, horizon: int
) -> CountSequence | None:
    path = cache_path(cache_dir, spec)
    if not path.is_file():
        return None
    cached = CountSequence.from_csv(path.read_text())
    if any(n not in cached.counts for n in range(1, horizon + 1)):
        return None
    return CountSequence.from_counts({n: cached.counts[n] for n in range(1, horizon + 1)})


def store_cached_counts(cache_dir: str | os.PathLike, spec: ClassSpec, cs: CountSequence) -> Path:
    path = cache_path(cache_dir, spec)
    path.parent.mkdir(parents=True, exist_ok=True)
    existing = None
    if path.is_file():
        existing = CountSequence.from_csv(path.read_text())
    if existing is None or len(existing.counts) < len(cs.counts):
        path.write_text(cs.to_csv())
    return path


def growth_estimate(cs: CountSequence) -> float:
    """a_N ** (1/N) at the largest computed N.

    A finite-horizon estimate only; it says nothing certain about the upper
    growth rate (a limsup)."""
    if not cs.counts:
        raise EmptySequence("no counts to estimate from")
    n = max(cs.counts)
    return cs.counts[n] ** (1.0 / n)


# --- k-pass sorting ----------------------------------------------------------


def gamma(k: int) -> list[Perm]:
    """All permutations of length k+2 ending in 1, lexicographically."""
    if k < 0:
        raise ValueError("k must be non-negative")
    check_horizon(k + 2)
    return [tail + (1,) for tail in permutations(range(2, k + 3))]


def _gamma_block(args) -> Perm | None:
    k, basis, n, lead = args
    for s in perms_with_lead(n, lead):
        if kernels.is_increasing(kernels.bubble_power(s, k)) != kernels.avoids_all(s, basis):
            return s
    return None


def gamma_counterexample(k: int, horizon: int, workers: int = 1) -> Perm | None:
    """First s (by length, then lexicographically) where 'k passes sort s'
    and 's avoids gamma(k)' disagree."""
    check_horizon(horizon)
    basis = gamma(k)
    blocks = _blocks(horizon)
    found = parallel_map(_gamma_block, [(k, basis, n, lead) for n, lead in blocks], workers)
    return next((s for s in found if s is not None), None)


def verify_gamma(k: int, horizon: int, workers: int = 1) -> bool:
    return gamma_counterexample(k, horizon, workers) is None


def sortable_levels(chain: str, horizon: int, workers: int = 1) -> list[set[Perm]]:
    """{s in S_n : chain(s) is increasing} for n = 0..horizon."""
    return preimage_levels([(2, 1)], horizon, chain=chain, workers=workers)


def av_levels(basis: Iterable[Sequence[int]], horizon: int) -> list[set[Perm]]:
    """Av(basis) ∩ S_n for n = 0..horizon, grown by the insertion tree."""
    check_horizon(horizon)
    basis = sort_perms(minimal_elements(basis))
    levels: list[set[Perm]] = [{()} if kernels.avoids_all((), basis) else set()]
    for _ in range(horizon):
        levels.append(
            {c for node in levels[-1] for c in _extensions(node) if kernels.avoids_all(c, basis, True)}
        )
    return levels


def binomial_sb_count(n: int) -> int:
    return math.comb(2 * n - 2, n - 1)

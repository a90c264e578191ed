"""Exhaustive verification suites behind ``bubblepat verify``.

Each suite returns a list of :class:`Check` lines in a fixed order; the
worker count only changes how the work is spread, never the output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

from bubblepat import kernels, oracle
from bubblepat.basis import constructive_basis
from bubblepat.classification import check_witness, classify, witness_pair
from bubblepat.errors import BubblePatError
from bubblepat.operators import bubble_recursive
from bubblepat.perm import Perm, format_perm

SB_BASIS = [(3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1), (2, 4, 3, 1)]

# fixed bases for the tree-versus-filter count comparison
COUNT_BASES = [
    [(2, 1)],
    [(1, 2, 3)],
    [(1, 3, 2)],
    [(2, 3, 1), (3, 2, 1)],
    [(1, 2, 3, 4)],
    [(2, 4, 1, 3), (3, 1, 4, 2)],
    [(4, 3, 2, 1), (1, 3, 2)],
    SB_BASIS,
]


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    ok: bool
    detail: str
    reproduce: str = ""

    def line(self) -> str:
        text = f"{'PASS' if self.ok else 'FAIL'} {self.suite}: {self.name}: {self.detail}"
        if not self.ok and self.reproduce:
            text += f"\n  reproduce: {self.reproduce}"
        return text

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "name": self.name,
            "ok": self.ok,
            "detail": self.detail,
            "reproduce": self.reproduce,
        }


def _compact(p: Perm) -> str:
    return format_perm(p, compact=len(p) <= 9).replace(" ", ",")


# --- operators -----------------------------------------------------------------


def _operator_block(args) -> list[str]:
    n, lead = args
    issues = []
    for s in oracle.perms_with_lead(n, lead):
        b = kernels.bubble(s)
        if b != bubble_recursive(s):
            issues.append(f"B definitions disagree on {format_perm(s)}")
        if kernels.is_increasing(b) != kernels.avoids_all(s, [(2, 3, 1), (3, 2, 1)]):
            issues.append(f"one-pass sortability mismatch on {format_perm(s)}")
        if kernels.is_increasing(kernels.stack_pass(s)) != kernels.avoids_all(s, [(2, 3, 1)]):
            issues.append(f"stack sortability mismatch on {format_perm(s)}")
    return issues


def suite_operators(horizon: int, workers: int = 1) -> list[Check]:
    oracle.check_horizon(horizon)
    blocks = [(n, lead) for n in range(1, horizon + 1) for lead in range(1, n + 1)]
    results = oracle.parallel_map(_operator_block, blocks, workers)
    checks = []
    for n in range(1, horizon + 1):
        issues = [i for (m, _), found in zip(blocks, results) if m == n for i in found]
        checks.append(
            Check(
                "operators",
                f"n={n}",
                not issues,
                f"{math.factorial(n)} permutations; recursive == splice, "
                "B-sortable == Av(231,321), S-sortable == Av(231)"
                if not issues
                else "; ".join(issues[:3]),
                f"bubblepat verify operators -n {n}",
            )
        )
    return checks


# --- good bases ------------------------------------------------------------------


def _good_basis_task(p: Perm) -> tuple[bool, str]:
    horizon = len(p) + 3
    cl = classify(p)
    basis = constructive_basis(cl)
    levels = oracle.preimage_levels([p], horizon)
    report = oracle.downset_report(levels)
    if not report.is_downset:
        tau, sigma = report.violation
        return False, f"not a downset: {format_perm(sigma)} in, {format_perm(tau)} out"
    empirical = oracle.basis_from_levels(levels)
    expected = {b for b in basis if len(b) <= horizon}
    if empirical != expected:
        extra = sorted(expected - empirical)
        missing = sorted(empirical - expected)
        return False, (
            f"{cl.case.value}: constructive-only {[format_perm(x) for x in extra]}, "
            f"oracle-only {[format_perm(x) for x in missing]}"
        )
    return True, cl.case.value


def good_patterns(max_len: int, min_len: int = 2) -> list[Perm]:
    return [
        p
        for m in range(min_len, max_len + 1)
        for p in permutations(range(1, m + 1))
        if classify(p).good
    ]


def suite_good_bases(horizon: int, workers: int = 1) -> list[Check]:
    """``horizon`` bounds |pi|; each pi is checked up to length |pi|+3."""
    oracle.check_horizon(horizon + 3)
    pats = good_patterns(horizon)
    results = oracle.parallel_map(_good_basis_task, pats, workers)
    checks = []
    for m in range(2, horizon + 1):
        rows = [(p, r) for p, r in zip(pats, results) if len(p) == m]
        bad = [(p, detail) for p, (ok, detail) in rows if not ok]
        checks.append(
            Check(
                "good-bases",
                f"|pi|={m}",
                True,
                f"{len(rows) - len(bad)}/{len(rows)} good patterns match the oracle at length {m + 3}",
            )
            if not bad
            else Check(
                "good-bases",
                f"|pi|={m}",
                False,
                f"{len(bad)}/{len(rows)} mismatches",
            )
        )
        for p, detail in bad:
            checks.append(
                Check(
                    "good-bases",
                    format_perm(p),
                    False,
                    detail,
                    f"bubblepat basis {_compact(p)} --verify -n {m + 3}",
                )
            )
    return checks


# --- witnesses -------------------------------------------------------------------


def _witness_task(m: int) -> list[str]:
    failures = []
    for p in permutations(range(1, m + 1)):
        if classify(p).good:
            continue
        try:
            w = witness_pair(p)
        except BubblePatError as exc:
            failures.append(f"{format_perm(p)}: {exc}")
            continue
        if not check_witness(p, w):
            failures.append(format_perm(p))
    return failures


def suite_witnesses(horizon: int, workers: int = 1) -> list[Check]:
    """``horizon`` bounds |pi|."""
    oracle.check_horizon(horizon)
    lengths = list(range(3, horizon + 1))
    results = oracle.parallel_map(_witness_task, lengths, workers)
    checks = []
    for m, failures in zip(lengths, results):
        total = sum(1 for p in permutations(range(1, m + 1)) if not classify(p).good)
        checks.append(
            Check(
                "witnesses",
                f"|pi|={m}",
                not failures,
                f"{total} non-good patterns, every witness pair verified"
                if not failures
                else "; ".join(failures[:3]),
                f"bubblepat basis {_compact(tuple(range(1, m + 1)))} --json",
            )
        )
    return checks


# --- gamma -----------------------------------------------------------------------


def suite_gamma(horizon: int, workers: int = 1, max_k: int = 3) -> list[Check]:
    oracle.check_horizon(horizon)
    checks = []
    for k in range(0, max_k + 1):
        g = oracle.gamma(k)
        checks.append(
            Check(
                "gamma",
                f"|Gamma_{k}|",
                len(g) == math.factorial(k + 1),
                f"{len(g)} permutations of length {k + 2} ending in 1",
            )
        )
    for k in range(1, max_k + 1):
        bad = oracle.gamma_counterexample(k, horizon, workers)
        checks.append(
            Check(
                "gamma",
                f"k={k}",
                bad is None,
                f"B^{k}(s) increasing <=> s avoids Gamma_{k}, all s up to length {horizon}"
                if bad is None
                else f"disagreement at {format_perm(bad)}",
                f"bubblepat verify gamma -n {horizon}",
            )
        )
    for k in range(1, max_k + 2):
        cs = oracle.count_av(oracle.gamma(k - 1), horizon, workers=workers)
        expected = {n: k ** (n - k) * math.factorial(k) for n in range(k, horizon + 1)}
        got = {n: c for n, c in cs.counts.items() if n >= k}
        checks.append(
            Check(
                "gamma",
                f"|Av(Gamma_{k - 1}) ∩ S_n| = {k}^(n-{k})*{k}!",
                got == expected,
                ",".join(str(got[n]) for n in sorted(got)),
                f"bubblepat enumerate {','.join(_compact(p) for p in oracle.gamma(k - 1))} -n {horizon}",
            )
        )
    return checks


# --- SB ----------------------------------------------------------------------------


def suite_sb(horizon: int, workers: int = 1) -> list[Check]:
    oracle.check_horizon(horizon)
    sortable = oracle.sortable_levels("SB", horizon, workers)
    av = oracle.av_levels(SB_BASIS, horizon)
    checks = []
    for n in range(1, horizon + 1):
        checks.append(
            Check(
                "sb",
                f"n={n}",
                sortable[n] == av[n] and len(av[n]) == oracle.binomial_sb_count(n),
                f"{len(sortable[n])} SB-sortable, {len(av[n])} in Av(3241,2341,4231,2431), "
                f"C(2n-2,n-1) = {oracle.binomial_sb_count(n)}",
                f"bubblepat verify sb -n {n}",
            )
        )
    return checks


# --- counts -----------------------------------------------------------------------


def suite_counts(horizon: int, workers: int = 1) -> list[Check]:
    oracle.check_horizon(horizon)
    naive_horizon = min(horizon, 7)
    checks = []
    for basis in COUNT_BASES:
        spec = oracle.ClassSpec(basis)
        tree = oracle.count_av(spec, horizon, workers=workers)
        naive = oracle.count_av_naive(spec, naive_horizon)
        agree = all(tree.counts[n] == naive.counts[n] for n in naive.counts)
        checks.append(
            Check(
                "counts",
                f"Av({spec.key()})",
                agree,
                ",".join(map(str, tree.values()))
                + f"; tree == filter up to n={naive_horizon}",
                f"bubblepat enumerate {','.join(_compact(b) for b in spec.ordered())} -n {horizon}",
            )
        )
    return checks


SUITES = {
    "operators": suite_operators,
    "good-bases": suite_good_bases,
    "witnesses": suite_witnesses,
    "gamma": suite_gamma,
    "sb": suite_sb,
    "counts": suite_counts,
}

DEFAULT_HORIZONS = {
    "operators": 8,
    "good-bases": 5,
    "witnesses": 8,
    "gamma": 8,
    "sb": 8,
    "counts": 8,
}


def run_suite(name: str, horizon: int | None = None, workers: int = 1) -> list[Check]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if horizon is None:
        horizon = DEFAULT_HORIZONS[name]
    return SUITES[name](horizon, workers)

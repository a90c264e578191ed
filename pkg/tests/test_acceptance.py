"""Exit criteria, one test per criterion.  Every check is exact; the two
runtime bounds are asserted as stated.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import contextlib
import io
import json
import math
import random
import time
from itertools import combinations

from bubblepat import kernels, oracle
from bubblepat.basis import inverse_basis, inverse_basis_set
from bubblepat.classification import classify, witness_pair
from bubblepat.cli import main
from bubblepat.operators import apply_chain, bubble_recursive, bubble_splice
from bubblepat.perm import contains
from oracles import sn, upto

SB_BASIS = {(3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1), (2, 4, 3, 1)}


def _avoids(s, basis):
    return not any(contains(s, b) for b in basis)


def test_01_operator_equivalence_s1_to_s9():
    started = time.perf_counter()
    checked = 0
    for n in range(1, 10):
        for s in sn(n):
            assert bubble_recursive(s) == bubble_splice(s), s
            checked += 1
    elapsed = time.perf_counter() - started
    assert checked == sum(math.factorial(n) for n in range(1, 10)) == 409113
    assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_02_one_pass_sortable_is_av_231_321():
    av = oracle.av_levels([(2, 3, 1), (3, 2, 1)], 9)
    for n in range(1, 10):
        sortable = {s for s in sn(n) if kernels.is_increasing(bubble_splice(s))}
        assert sortable == av[n], n
        assert len(sortable) == 2 ** (n - 1)


def test_03_basis_of_231():
    assert set(inverse_basis((2, 3, 1)).basis) == SB_BASIS
    assert oracle.empirical_basis((2, 3, 1), 6) == SB_BASIS


def test_04_every_good_pattern_up_to_5_matches_oracle():
    started = time.perf_counter()
    patterns = [p for p in upto(5, start=2) if classify(p).good]
    assert len(patterns) == 2 + 6 + 20 + 85
    for p in patterns:
        horizon = len(p) + 3
        levels = oracle.preimage_levels([p], horizon)
        report = oracle.downset_report(levels)
        assert report.is_downset, (p, report.violation)
        assert set(inverse_basis(p, cross_check=False).basis) == oracle.basis_from_levels(levels), p
    elapsed = time.perf_counter() - started
    assert elapsed < 15 * 60, f"took {elapsed:.0f}s"


def test_05_every_bad_pattern_up_to_5_has_a_witness():
    bad = [p for p in upto(5) if not classify(p).good]
    assert len(bad) == 4 + 35
    for p in bad:
        w = witness_pair(p)
        assert contains(w.theta2, w.theta1)
        assert contains(bubble_splice(w.theta1), p)
        assert not contains(bubble_splice(w.theta2), p)


def test_06_reduction_identities():
    for longer, shorter in [((2, 1, 3), (2, 1)), ((1, 3, 2, 4), (1, 3, 2))]:
        for s in upto(7):
            b = bubble_splice(s)
            assert contains(b, longer) == contains(b, shorter), (longer, s)


def test_07_special_three_lr_case():
    basis = {(1, 2, 3), (2, 1, 3), (1, 3, 2), (3, 1, 2)}
    assert set(inverse_basis((1, 2, 3)).basis) == basis
    for s in upto(7):
        assert _avoids(s, basis) == (not contains(bubble_splice(s), (1, 2, 3))), s


def test_08_sb_sortable_class_and_counts():
    av = oracle.av_levels(SB_BASIS, 8)
    counts = []
    for n in range(1, 9):
        sortable = {s for s in sn(n) if kernels.is_increasing(apply_chain(s, "SB"))}
        assert sortable == av[n], n
        counts.append(len(sortable))
    assert counts == [math.comb(2 * n - 2, n - 1) for n in range(1, 9)]
    assert counts == [1, 2, 6, 20, 70, 252, 924, 3432]


def test_09_k_pass_sortability():
    for k in range(1, 4):
        g = oracle.gamma(k)
        assert len(g) == math.factorial(k + 1)
        for s in upto(8):
            assert kernels.is_increasing(kernels.bubble_power(s, k)) == kernels.avoids_all(s, g), (k, s)
    for k in range(1, 5):
        cs = oracle.count_av(oracle.gamma(k - 1), 8)
        for n in range(k, 9):
            assert cs.counts[n] == k ** (n - k) * math.factorial(k), (k, n)


def test_10_gamma2_preimage_is_av_gamma3():
    g2 = oracle.gamma(2)
    assert not classify((2, 3, 4, 1)).good and (2, 3, 4, 1) in g2
    assert oracle.check_set_class(g2, 8).is_downset
    pre = oracle.preimage_levels(g2, 8)
    av = oracle.av_levels(oracle.gamma(3), 8)
    for n in range(1, 9):
        assert pre[n] == av[n], n


def test_11_intersection_of_good_patterns():
    good = [p for p in upto(4) if classify(p).good]
    rng = random.Random(11)
    pairs = rng.sample(list(combinations(good, 2)), 10)
    for pair in pairs:
        basis = inverse_basis_set(pair).basis
        for s in upto(7):
            b = bubble_splice(s)
            in_preimage = not any(contains(b, p) for p in pair)
            assert in_preimage == _avoids(s, basis), (pair, s)


def _verify_output(suite, horizon, workers, as_json=False):
    buf = io.StringIO()
    argv = ["verify", suite, "-n", str(horizon), "--workers", str(workers)]
    if as_json:
        argv.append("--json")
    with contextlib.redirect_stdout(buf):
        code = main(argv)
    out = buf.getvalue()
    if as_json:
        report = json.loads(out)
        report.pop("elapsed_ms")
        out = json.dumps(report, sort_keys=True)
    return code, out.encode()


def test_12_verify_output_is_worker_independent():
    runs = [("operators", 7), ("good-bases", 4), ("witnesses", 6), ("gamma", 7), ("sb", 7), ("counts", 7)]
    for suite, horizon in runs:
        baseline = _verify_output(suite, horizon, 1)
        assert baseline[0] == 0
        for workers in (2, 8):
            assert _verify_output(suite, horizon, workers) == baseline, (suite, workers)
        json_base = _verify_output(suite, horizon, 1, as_json=True)
        assert _verify_output(suite, horizon, 8, as_json=True) == json_base

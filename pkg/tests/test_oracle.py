import math
import random

import pytest

from bubblepat import oracle
from bubblepat.errors import EmptySequence, HorizonExceeded, NotADownset
from bubblepat.oracle import ClassSpec, CountSequence
from bubblepat.perm import contains
from oracles import brute_contains, sn, swap_pass, upto

SB_BASIS = [(3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1), (2, 4, 3, 1)]


def test_enumerate_sn():
    assert list(oracle.enumerate_sn(1)) == [(1,)]
    s3 = list(oracle.enumerate_sn(3))
    assert len(s3) == 6 and s3[0] == (1, 2, 3) and s3[-1] == (3, 2, 1)
    assert s3 == sorted(s3)
    assert list(oracle.enumerate_sn(0)) == [()]
    with pytest.raises(HorizonExceeded):
        oracle.enumerate_sn(12)
    assert next(oracle.enumerate_sn(12, cap=12)) == tuple(range(1, 13))


@pytest.mark.slow
def test_enumerate_s10_count():
    assert sum(1 for _ in oracle.enumerate_sn(10)) == math.factorial(10)


def test_lead_blocks_partition_sn():
    for n in range(1, 7):
        joined = [p for lead in range(1, n + 1) for p in oracle.perms_with_lead(n, lead)]
        assert joined == list(sn(n))


def test_in_inverse_class():
    assert not oracle.in_inverse_class((3, 2, 1), (2, 1))
    assert oracle.in_inverse_class((1,), (1, 2))
    for s in upto(5):
        assert not oracle.in_inverse_class(s, (1,))


def test_preimage_levels_brute_force():
    levels = oracle.preimage_levels([(1, 3, 2)], 6)
    assert levels[0] == {()}
    for n in range(1, 7):
        assert levels[n] == {s for s in sn(n) if not brute_contains(swap_pass(s), (1, 3, 2))}


def test_downset_check_examples():
    r = oracle.downset_check((1, 2, 3, 4), 6)
    assert not r.is_downset
    tau, sigma = r.violation
    assert contains(sigma, tau) and len(sigma) == len(tau) + 1
    assert not contains(swap_pass(sigma), (1, 2, 3, 4))
    assert contains(swap_pass(tau), (1, 2, 3, 4))
    assert oracle.downset_check((2, 1), 8).is_downset
    assert oracle.downset_check((2, 3, 1), 8).is_downset
    assert r.to_json()["is_downset"] is False


def test_downset_violation_is_least():
    # no member shorter than the reported sigma has a missing deletion
    r = oracle.downset_check((2, 3, 4, 1), 7)
    tau, sigma = r.violation
    levels = oracle.preimage_levels([(2, 3, 4, 1)], len(sigma))
    for n in range(1, len(sigma) + 1):
        for s in sorted(levels[n]):
            if (n, s) >= (len(sigma), sigma):
                break
            assert all(
                tuple(w - 1 if w > s[i] else w for j, w in enumerate(s) if j != i) in levels[n - 1]
                for i in range(n)
            )


def test_empirical_basis_examples():
    assert oracle.empirical_basis((2, 1), 5) == {(2, 3, 1), (3, 2, 1)}
    assert oracle.empirical_basis((2, 3, 1), 6) == set(SB_BASIS)
    assert oracle.empirical_basis((1, 2, 3), 5) == {(1, 2, 3), (2, 1, 3), (1, 3, 2), (3, 1, 2)}
    assert oracle.empirical_basis((1,), 4) == {(1,)}
    assert oracle.empirical_basis((1, 2), 4) == {(1, 2), (2, 1)}
    with pytest.raises(NotADownset):
        oracle.empirical_basis((1, 2, 3, 4), 6)


def test_check_set_class():
    assert oracle.check_set_class(oracle.gamma(2), 7).is_downset
    assert not oracle.check_set_class([(1, 2, 3, 4)], 6).is_downset
    assert oracle.check_set_class([(2, 1)], 8).is_downset
    with pytest.raises(ValueError):
        oracle.check_set_class([], 4)


def test_count_av_examples():
    assert oracle.count_av([(2, 1)], 5).values() == [1, 1, 1, 1, 1]
    assert oracle.count_av([(2, 3, 1), (3, 2, 1)], 6).values() == [1, 2, 4, 8, 16, 32]
    assert oracle.count_av(SB_BASIS, 6).values() == [1, 2, 6, 20, 70, 252]
    assert oracle.count_av([(1,)], 3).values() == [0, 0, 0]


def test_count_av_invariants():
    cs = oracle.count_av([(1, 3, 2)], 7)
    assert list(cs.counts) == list(range(1, 8))
    assert all(c <= math.factorial(n) for n, c in cs.counts.items())
    assert cs.growth_points[3] == pytest.approx(14 ** 0.25)


def _random_basis(rng):
    size = rng.randint(1, 3)
    out = []
    for _ in range(size):
        k = rng.randint(2, 4)
        p = list(range(1, k + 1))
        rng.shuffle(p)
        out.append(tuple(p))
    return out


def test_tree_count_equals_filter_count_on_random_bases():
    rng = random.Random(2024)
    for _ in range(20):
        basis = _random_basis(rng)
        tree = oracle.count_av(basis, 7)
        brute = {n: sum(1 for s in sn(n) if not any(contains(s, b) for b in basis)) for n in range(1, 8)}
        assert tree.counts == brute, basis
        assert oracle.count_av_naive(basis, 7).counts == brute


def test_count_av_workers_agree():
    serial = oracle.count_av(SB_BASIS, 8)
    assert oracle.count_av(SB_BASIS, 8, workers=2).counts == serial.counts


def test_csv_roundtrip_and_cache(tmp_path):
    spec = ClassSpec([(2, 3, 1), (3, 2, 1)])
    assert spec.key() == "2 3 1;3 2 1"
    cs = oracle.count_av(spec, 6, cache_dir=tmp_path)
    path = oracle.cache_path(tmp_path, spec)
    text = path.read_text()
    assert text.splitlines()[0] == "n,count,root"
    assert text.splitlines()[3] == "3,4,1.587401"
    assert CountSequence.from_csv(text).counts == cs.counts
    # a shorter request is served from the cache
    assert oracle.load_cached_counts(tmp_path, spec, 4).values() == [1, 2, 4, 8]
    assert oracle.load_cached_counts(tmp_path, spec, 7) is None


def test_class_spec_normalizes_to_antichain():
    spec = ClassSpec([(2, 1), (3, 2, 1), (2, 1)])
    assert spec.basis == frozenset({(2, 1)})
    assert (1, 2, 3) in spec and (2, 1) not in spec


def test_growth_estimate():
    cs = oracle.count_av([(2, 3, 1), (3, 2, 1)], 10)
    assert oracle.growth_estimate(cs) == pytest.approx(2 ** 0.9)
    assert oracle.growth_estimate(oracle.count_av([(2, 1)], 6)) == 1.0
    sb = oracle.count_av(SB_BASIS, 10)
    assert sb.counts[10] == math.comb(18, 9)
    assert oracle.growth_estimate(sb) == pytest.approx(math.comb(18, 9) ** 0.1)
    with pytest.raises(EmptySequence):
        oracle.growth_estimate(CountSequence.from_counts({}))


def test_gamma_sets():
    assert oracle.gamma(0) == [(2, 1)]
    assert set(oracle.gamma(1)) == {(2, 3, 1), (3, 2, 1)}
    g2 = oracle.gamma(2)
    assert len(g2) == 6 and (2, 3, 4, 1) in g2
    assert all(len(p) == 4 and p[-1] == 1 for p in g2)
    for k in range(5):
        assert len(oracle.gamma(k)) == math.factorial(k + 1)


def test_verify_gamma_small():
    assert oracle.verify_gamma(1, 7)
    assert oracle.verify_gamma(2, 7)


def test_gamma_chain_identity():
    # s avoids Gamma_k  <=>  B(s) avoids Gamma_{k-1}
    for k in range(1, 4):
        gk, gk1 = oracle.gamma(k), oracle.gamma(k - 1)
        for s in upto(7):
            assert (not any(contains(s, g) for g in gk)) == (
                not any(contains(swap_pass(s), g) for g in gk1)
            )


def test_parallel_map_preserves_order():
    items = list(range(20))
    assert oracle.parallel_map(abs, items, workers=3) == items

import pytest

from bubblepat import oracle
from bubblepat.basis import (
    RExtension,
    Side,
    basis_is_antichain,
    basis_one_lr,
    basis_special_three,
    basis_two_lr,
    constructive_basis,
    generate_R,
    inverse_basis,
    inverse_basis_set,
    r_extensions,
)
from bubblepat.classification import Case, classify
from bubblepat.errors import ContainsBadPermutation, WrongCase
from bubblepat.perm import contains, is_antichain
from oracles import brute_contains, brute_minimal, swap_pass, upto

SB_BASIS = {(3, 2, 4, 1), (2, 3, 4, 1), (4, 2, 3, 1), (2, 4, 3, 1)}


def test_basis_one_lr_examples():
    assert basis_one_lr((2, 1)) == {(2, 3, 1), (3, 2, 1)}
    assert basis_one_lr((3, 1, 2)) == {(3, 4, 1, 2), (4, 3, 1, 2)}
    assert basis_one_lr((3, 2, 1)) == {(3, 4, 2, 1), (4, 3, 2, 1)}
    for bad in [(1,), (2, 3, 1), (1, 2)]:
        with pytest.raises(WrongCase):
            basis_one_lr(bad)


def test_generate_R_for_231():
    r = generate_R((2, 3, 1))
    assert SB_BASIS <= r
    assert basis_two_lr((2, 3, 1)) == SB_BASIS


def test_generate_R_wrong_case():
    for bad in [(2, 1), (2, 1, 3), (1, 2, 3, 4), (3, 1, 2)]:
        with pytest.raises(WrongCase):
            generate_R(bad)


def test_r_extension_shapes():
    # every realized word contains pi; coalesced ones are one point longer
    for p in upto(5):
        if classify(p).case is not Case.TwoLrGeneral:
            continue
        lam_len = p.index(len(p)) - 1
        exts = list(r_extensions(p))
        assert sum(e.coalesced for e in exts) == 4
        for e in exts:
            w = e.realize(p)
            assert contains(w, p)
            assert len(w) == len(p) + (1 if e.coalesced else 2)
            assert not (e.x_side is Side.AfterA and e.y_gap_index == 0 and not e.coalesced)
            assert 0 <= e.y_gap_index <= lam_len


def test_coalesced_extensions_of_231():
    got = {
        RExtension(side, 0, 0, top, True).realize((2, 3, 1))
        for side in Side
        for top in (True, False)
    }
    assert got == SB_BASIS


def test_every_R_member_is_outside_the_preimage():
    # members of R(pi) force pi into B(s)
    for p in upto(5):
        if classify(p).case is not Case.TwoLrGeneral:
            continue
        for w in generate_R(p):
            assert brute_contains(swap_pass(w), p) if len(w) <= 6 else contains(swap_pass(w), p)


@pytest.mark.parametrize("p, horizon", [((1, 3, 2), 6), ((2, 4, 1, 3), 7), ((3, 4, 1, 2), 7)])
def test_basis_two_lr_matches_oracle(p, horizon):
    assert basis_two_lr(p) == oracle.empirical_basis(p, horizon)


def test_basis_special_three():
    assert basis_special_three((1, 2, 3)) == {(1, 2, 3), (2, 1, 3), (1, 3, 2), (3, 1, 2)}
    assert basis_special_three((2, 1, 3, 4)) == {(2, 3, 1, 4), (3, 2, 1, 4), (2, 4, 1, 3), (4, 2, 1, 3)}
    with pytest.raises(WrongCase):
        basis_special_three((2, 3, 1))
    with pytest.raises(WrongCase):
        basis_special_three((1, 3, 2, 4))


def test_special_three_membership_brute_force():
    basis = basis_special_three((1, 2, 3))
    for s in upto(6):
        assert (not any(brute_contains(s, b) for b in basis)) == (
            not brute_contains(swap_pass(s), (1, 2, 3))
        )


@pytest.mark.parametrize(
    "p, expected",
    [
        ((1,), {(1,)}),
        ((1, 2), {(1, 2), (2, 1)}),
        ((2, 1), {(2, 3, 1), (3, 2, 1)}),
        ((2, 3, 1), SB_BASIS),
        ((2, 1, 3), {(2, 3, 1), (3, 2, 1)}),
        ((1, 3, 2, 4), basis_two_lr((1, 3, 2))),
    ],
)
def test_inverse_basis_examples(p, expected):
    r = inverse_basis(p)
    assert r.outcome == "Basis"
    assert set(r.basis) == expected
    assert r.cross_checked


def test_inverse_basis_not_a_class():
    r = inverse_basis((1, 2, 3, 4))
    assert r.outcome == "NotAClass"
    assert (r.witness.theta1, r.witness.theta2) == ((2, 1, 4, 3), (5, 2, 1, 4, 3))
    assert r.cross_checked
    assert r.to_json()["witness"] == {"theta1": "2 1 4 3", "theta2": "5 2 1 4 3"}


def test_cross_check_default_off_for_long_patterns():
    r = inverse_basis((2, 3, 4, 5, 6, 1))
    assert r.outcome == "NotAClass" and not r.cross_checked
    r = inverse_basis((5, 6, 1, 2, 3, 4))
    assert r.outcome == "Basis" and not r.cross_checked


def test_basis_length_bounds_and_antichain():
    for p in upto(5):
        cl = classify(p)
        if not cl.good:
            continue
        r = inverse_basis(p, cross_check=False)
        assert basis_is_antichain(r)
        lengths = {len(b) for b in r.basis}
        n = len(p)
        if cl.case is Case.OneLr:
            assert lengths == {n + 1}
        elif cl.case is Case.TwoLrEndsMax:
            assert lengths == {n}
        elif cl.case is Case.TwoLrGeneral:
            assert max(lengths) <= n + 2
        elif cl.case is Case.ThreeLrSpecial:
            assert lengths == {n}
        elif cl.case is Case.ThreeLrReducible:
            assert max(lengths) <= n + 1


def test_inverse_basis_set():
    assert set(inverse_basis_set([(2, 1)]).basis) == {(2, 3, 1), (3, 2, 1)}
    r = inverse_basis_set([(2, 3, 1), (3, 2, 1)], cross_check=True, horizon=7)
    expected = brute_minimal(constructive_basis(classify((2, 3, 1))) | constructive_basis(classify((3, 2, 1))))
    assert set(r.basis) == expected
    assert r.cross_checked
    with pytest.raises(ContainsBadPermutation) as info:
        inverse_basis_set([(2, 1), (2, 3, 4, 1)])
    assert info.value.perm == (2, 3, 4, 1)


def test_singleton_set_matches_inverse_basis():
    for p in upto(4):
        if classify(p).good:
            assert inverse_basis_set([p]).basis == inverse_basis(p, cross_check=False).basis


def test_basis_result_json():
    j = inverse_basis((2, 3, 1)).to_json()
    assert j == {
        "outcome": "Basis",
        "basis": ["2 3 4 1", "2 4 3 1", "3 2 4 1", "4 2 3 1"],
        "witness": None,
        "case_used": "TwoLrGeneral",
        "cross_checked": True,
    }

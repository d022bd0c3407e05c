"""Exhaustive case checks: value quadruples, four-group splits, extremal hand."""

import re
from collections import Counter

import pytest

from mindist.cards import JokerContext, Suit, parse_card, parse_hand
from mindist.melds import gap
from mindist.montecarlo import sample_hand
from mindist.solver import min_dist
from mindist.verifiers import (
    CaseReport,
    _faithful_chunk,
    certify_extremal,
    check_lemma1,
    mirror_values,
    permute_suits,
    verify_3332,
)


def test_report_counts_must_add_up():
    with pytest.raises(ValueError):
        CaseReport("x", 10, 8, ("only-one",))
    r = CaseReport("x", 3, 3)
    assert r.ok


def test_lemma1_all_quadruples_have_a_close_pair():
    report = check_lemma1()
    assert report.cases_enumerated == 715
    assert report.ok
    assert report.metrics["max_min_gap"] == 2


def test_lemma1_witness_quadruples():
    def best(quad):
        return min(gap(a, b) for a in quad for b in quad if a < b)

    assert best((1, 4, 7, 10)) == 2  # tight: every pair two apart
    assert best((2, 3, 7, 13)) == 0
    assert best((1, 5, 9, 13)) == 0  # ace reaches the king from above


def test_four_group_split_linear_model():
    report = verify_3332(model="paper")
    assert report.cases_enumerated == 1_108_800
    assert len(report.failures) == 144
    assert report.cases_passed == 1_108_800 - 144

    # every counterexample contains both arithmetic triples stepping by five
    for line in report.failures:
        assert "(1, 6, 11)" in line
        assert "(2, 7, 12)" in line

    by_set = Counter(int(re.match(r"set=(\d+)", f).group(1)) for f in report.failures)
    assert dict(by_set) == {3: 18, 4: 24, 5: 30, 8: 30, 9: 24, 10: 18}


def test_four_group_split_faithful_chunks():
    # duplicated value next to the wildcard: nothing needs the solver
    n, p, esc, fails = _faithful_chunk((1, 2))
    assert (n, p, esc, fails) == (92_400, 92_400, 0, [])

    # this pair leaves room for spread splits that get escalated, all pass
    n, p, esc, fails = _faithful_chunk((5, 9))
    assert (n, p, esc, fails) == (92_400, 92_400, 24, [])


def test_verify_3332_rejects_unknown_model():
    with pytest.raises(ValueError):
        verify_3332(model="wrong")


def test_extremal_certification():
    report = certify_extremal()
    assert report.ok
    assert report.cases_enumerated == 2
    assert report.metrics["min_dist"] == 7


def test_suit_permutation_preserves_distance():
    perm = {
        Suit.HEARTS: Suit.SPADES,
        Suit.CLUBS: Suit.DIAMONDS,
        Suit.DIAMONDS: Suit.HEARTS,
        Suit.SPADES: Suit.CLUBS,
    }
    for i in range(3):
        hand, ctx = sample_hand(13, i)
        moved_hand, moved_ctx = permute_suits(hand, ctx, perm)
        assert min_dist(moved_hand, moved_ctx).value == min_dist(hand, ctx).value


def test_value_mirror_preserves_distance():
    for i in range(3):
        hand, ctx = sample_hand(13, i)
        flipped_hand, flipped_ctx = mirror_values(hand, ctx)
        assert min_dist(flipped_hand, flipped_ctx).value == min_dist(hand, ctx).value
        back_hand, back_ctx = mirror_values(flipped_hand, flipped_ctx)
        assert sorted(map(str, back_hand)) == sorted(map(str, hand))
        assert back_ctx.wildcard == ctx.wildcard


def test_mirror_fixes_ace_and_moves_two_to_king():
    hand = parse_hand("AH 2H 3H 4H 5C 6C 7C 8S 9S 10S JD QD KD")
    ctx = JokerContext(parse_card("2S"))
    flipped_hand, flipped_ctx = mirror_values(hand, ctx)
    assert parse_card("AH") in flipped_hand
    assert parse_card("KH") in flipped_hand
    assert flipped_ctx.wildcard == parse_card("KS")

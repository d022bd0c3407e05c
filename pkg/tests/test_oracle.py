"""Integer-programming oracle agrees with the branch-and-bound search."""

from mindist.cards import Hand, JokerContext, parse_card, parse_hand
from mindist.declare import validate_declaration
from mindist.montecarlo import sample_hand
from mindist.oracle import milp_min_dist
from mindist.solver import distance, min_dist

CRAFTED = [
    # extremal spread hand
    ("2H 3C 4S 5D 6H 7C 8S 9D 10H JC QS KS KD", "AH"),
    # already declarable
    ("2H 3H 4H 5C 6C 7C 9D 10D JD KH KC KS KD", "8D"),
    # printed joker plus three wildcard-value cards
    ("JK 8H 8C 8S 2H 3H 4H 9D JD KD 5C AC QS", "8D"),
    # one suit end to end
    ("AH 2H 3H 4H 5H 6H 7H 8H 9H 10H JH QH KH", "5S"),
]


def check_pair(hand, ctx):
    res = min_dist(hand, ctx)
    milp_value, milp_decl = milp_min_dist(hand, ctx)
    assert milp_value == res.value
    assert validate_declaration(milp_decl, ctx) == ()
    target = Hand(
        [c for m in milp_decl.melds for c in m.cards],
        printed_jokers=ctx.printed_jokers,
    )
    assert distance(hand, target) == milp_value


def test_crafted_hands():
    for tokens, wcj in CRAFTED:
        check_pair(parse_hand(tokens), JokerContext(parse_card(wcj)))


def test_sampled_hands():
    for i in range(8):
        hand, ctx = sample_hand(13, i)
        check_pair(hand, ctx)

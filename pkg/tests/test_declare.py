"""Full-hand declaration rules."""

from mindist.cards import JokerContext, Suit, parse_card as pc, parse_hand
from mindist.declare import (
    Declaration,
    declaration_matches_hand,
    is_declarable,
    validate_declaration,
)
from mindist.melds import Meld


def seq(suit, start, *tokens):
    return Meld.sequence(suit, start, tuple(pc(t) for t in tokens))


def set_of(value, *tokens):
    return Meld.set_of(value, tuple(pc(t) for t in tokens))


CTX = JokerContext(pc("8D"))

GOOD = Declaration((
    seq(Suit.HEARTS, 2, "2H", "3H", "4H"),
    seq(Suit.CLUBS, 5, "5C", "6C", "7C"),
    seq(Suit.DIAMONDS, 9, "9D", "10D", "JD"),
    set_of(13, "KH", "KC", "KS", "KD"),
))

GOOD_HAND = parse_hand("2H 3H 4H 5C 6C 7C 9D 10D JD KH KC KS KD")


def test_valid_declaration():
    assert validate_declaration(GOOD, CTX) == ()
    assert declaration_matches_hand(GOOD, GOOD_HAND)
    assert is_declarable(GOOD_HAND, CTX)


def test_wrong_size():
    decl = Declaration(GOOD.melds[:3])
    assert "wrong-size" in validate_declaration(decl, CTX)


def test_card_reused():
    decl = Declaration((
        seq(Suit.HEARTS, 2, "2H", "3H", "4H"),
        seq(Suit.HEARTS, 2, "2H", "3H", "4H"),
        seq(Suit.DIAMONDS, 9, "9D", "10D", "JD"),
        set_of(13, "KH", "KC", "KS", "KD"),
    ))
    assert "card-reused" in validate_declaration(decl, CTX)


def test_too_few_sequences():
    decl = Declaration((
        seq(Suit.HEARTS, 2, "2H", "3H", "4H"),
        set_of(13, "KH", "KC", "KS", "KD"),
        set_of(5, "5C", "5D", "5S"),
        set_of(9, "9C", "9S", "9H"),
    ))
    assert "too-few-sequences" in validate_declaration(decl, CTX)


def test_no_pure_sequence():
    # every run leans on a joker, so none is pure
    decl = Declaration((
        seq(Suit.HEARTS, 2, "2H", "8S", "4H"),
        seq(Suit.CLUBS, 5, "5C", "8C", "7C"),
        seq(Suit.DIAMONDS, 9, "9D", "8H", "JD"),
        set_of(13, "KH", "KC", "KS", "KD"),
    ))
    errs = validate_declaration(decl, CTX)
    assert "no-pure-sequence" in errs


def test_meld_errors_bubble_up_with_index():
    decl = Declaration((
        seq(Suit.HEARTS, 2, "2H", "3H"),
        seq(Suit.CLUBS, 5, "5C", "6C", "7C", "9C"),
        seq(Suit.DIAMONDS, 9, "9D", "10D", "JD"),
        set_of(13, "KH", "KC", "KS", "KD"),
    ))
    errs = validate_declaration(decl, CTX)
    assert "meld0:undersized" in errs
    assert "meld1:non-joker-fill" in errs


def test_matches_hand_is_exact():
    other = parse_hand("2H 3H 4H 5C 6C 7C 9D 10D JD KH KC KS QD")
    assert not declaration_matches_hand(GOOD, other)


def test_not_declarable_without_structure():
    # thirteen isolated values, one joker at most: no meld can form
    hand = parse_hand("AH 4H 7H 10H 2C 5C 8C JC 3D 6D 9D QD KS")
    assert not is_declarable(hand, JokerContext(pc("8S")))

"""Card model for a single 52-card deck plus printed jokers.

Values run A, 2..10, J, Q, K stored as ints 1..13.  The ace is dual-ended:
it may sit at position 1 or position 14 of a suit line, never both at once.
A printed joker has neither value nor suit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable

HAND_SIZE = 13

# Printed jokers accompanying the single deck.  The rules text fixes one.
PRINTED_JOKER_COUNT = 1


class Suit(enum.IntEnum):
    HEARTS = 0
    CLUBS = 1
    DIAMONDS = 2
    SPADES = 3

    @property
    def symbol(self) -> str:
        return "HCDS"[self]

    @property
    def glyph(self) -> str:
        return "♥♣♦♠"[self]


_SUIT_BY_SYMBOL = {s.symbol: s for s in Suit}

_VALUE_TOKENS = {
    "A": 1, "2": 2, "3": 3, "4": 4, "5": 5, "6": 6, "7": 7,
    "8": 8, "9": 9, "10": 10, "T": 10, "J": 11, "Q": 12, "K": 13,
}
_VALUE_RENDER = {v: t for t, v in _VALUE_TOKENS.items() if t != "T"}

JOKER_TOKEN = "JK"


@dataclass(frozen=True, order=True)
class Card:
    """A natural card, or the printed joker encoded as value 0 / suit None."""

    suit: Suit | None
    value: int

    @property
    def is_printed_joker(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        if self.is_printed_joker:
            return JOKER_TOKEN
        assert self.suit is not None
        return _VALUE_RENDER[self.value] + self.suit.symbol

    def __repr__(self) -> str:  # keeps pytest diffs readable
        return f"Card({self!s})"


PRINTED_JOKER = Card(None, 0)

# Stable ids: naturals 0..51 as suit*13 + value-1, printed joker 52.
NATURAL_COUNT = 52
PRINTED_JOKER_ID = 52


def card_id(card: Card) -> int:
    if card.is_printed_joker:
        return PRINTED_JOKER_ID
    assert card.suit is not None
    return card.suit * 13 + card.value - 1


def id_to_card(cid: int) -> Card:
    if cid == PRINTED_JOKER_ID:
        return PRINTED_JOKER
    return Card(Suit(cid // 13), cid % 13 + 1)


DECK: tuple[Card, ...] = tuple(id_to_card(i) for i in range(NATURAL_COUNT))


def positions(value: int) -> tuple[int, ...]:
    """Suit-line positions a value may occupy; the ace gets both ends."""
    if value == 1:
        return (1, 14)
    return (value,)


def value_at_position(pos: int) -> int:
    """Inverse of :func:`positions` for a single position slot."""
    if not 1 <= pos <= 14:
        raise ValueError(f"position out of range: {pos}")
    return 1 if pos in (1, 14) else pos


def parse_card(token: str) -> Card:
    t = token.strip().upper()
    if t == JOKER_TOKEN:
        return PRINTED_JOKER
    if len(t) >= 2 and t[:-1] in _VALUE_TOKENS and t[-1] in _SUIT_BY_SYMBOL:
        return Card(_SUIT_BY_SYMBOL[t[-1]], _VALUE_TOKENS[t[:-1]])
    raise ValueError(f"unrecognized card token: {token!r}")


def _card_sort_key(card: Card) -> tuple[int, int, int]:
    if card.is_printed_joker:
        return (1, 0, 0)
    assert card.suit is not None
    return (0, card.suit, min(positions(card.value)))


class Hand(tuple):
    """A 13-card hand held in canonical order (suit, then low position).

    Multiset semantics: with a single deck a natural may appear at most
    once, and printed jokers at most PRINTED_JOKER_COUNT times.
    """

    def __new__(cls, cards: Iterable[Card], printed_jokers: int = PRINTED_JOKER_COUNT):
        ordered = sorted(cards, key=_card_sort_key)
        if len(ordered) != HAND_SIZE:
            raise ValueError(f"a hand holds {HAND_SIZE} cards, got {len(ordered)}")
        naturals = [c for c in ordered if not c.is_printed_joker]
        if len(set(naturals)) != len(naturals):
            raise ValueError("duplicate natural card; only one deck is in play")
        if len(ordered) - len(naturals) > printed_jokers:
            raise ValueError("more printed jokers than the deck provides")
        return super().__new__(cls, ordered)

    def __str__(self) -> str:
        return " ".join(str(c) for c in self)


@dataclass(frozen=True)
class JokerContext:
    """The face-up wildcard card and the printed-joker supply.

    Every natural sharing the wildcard's value acts as a joker.  The
    face-up card itself is out of play: never drawable, never in a hand.
    """

    wildcard: Card
    printed_jokers: int = PRINTED_JOKER_COUNT

    def __post_init__(self) -> None:
        if self.wildcard.is_printed_joker:
            raise ValueError("the face-up wildcard must be a natural card")

    @property
    def wildcard_value(self) -> int:
        return self.wildcard.value

    def is_joker(self, card: Card) -> bool:
        return card.is_printed_joker or card.value == self.wildcard.value

    def pool_ids(self, hand: Hand) -> set[int]:
        """Ids of cards available as replacements for the given hand."""
        pool = set(range(NATURAL_COUNT))
        pool.discard(card_id(self.wildcard))
        for c in hand:
            pool.discard(card_id(c))
        if self.printed_jokers > len([c for c in hand if c.is_printed_joker]):
            pool.add(PRINTED_JOKER_ID)
        return pool


def parse_hand(text: str, printed_jokers: int = PRINTED_JOKER_COUNT) -> Hand:
    tokens = text.replace(",", " ").split()
    return Hand((parse_card(t) for t in tokens), printed_jokers)


def check_hand_against_context(hand: Hand, ctx: JokerContext) -> None:
    """Reject hands that contain the face-up wildcard card itself."""
    if ctx.wildcard in hand:
        raise ValueError(f"hand contains the face-up wildcard {ctx.wildcard}")

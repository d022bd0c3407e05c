"""Melds: suit sequences and value sets, with joker-aware validation.

A sequence occupies consecutive positions 1..14 of one suit (length >= 3).
A slot is satisfied by the face natural of that position, or by a joker.
A card of the wildcard value sitting at its *own* face position still
counts as a natural fill, so it does not spoil purity.

A set holds 3 or 4 cards of one value; natural fills must carry pairwise
distinct suits and at most two slots may be jokers.  Because every card
of the wildcard value is a joker, no valid set of that value exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .cards import Card, JokerContext, Suit, positions, value_at_position

SEQ = "SEQ"
SET = "SET"

MIN_MELD = 3
MAX_SET = 4
MAX_SET_JOKERS = 2

# validate_meld reason codes
BAD_SPAN = "bad-span"
UNDERSIZED = "undersized"
OVERSIZED_SET = "oversized-set"
DUPLICATE_SUIT = "duplicate-suit-in-set"
NON_JOKER_FILL = "non-joker-fill"
TOO_MANY_SET_JOKERS = "too-many-set-jokers"
WILDCARD_PLACED = "wildcard-card-placed"
SLOT_COUNT_MISMATCH = "slot-count-mismatch"


@dataclass(frozen=True)
class Meld:
    kind: str
    cards: tuple[Card, ...]
    suit: Suit | None = None
    start: int | None = None
    value: int | None = None

    @staticmethod
    def sequence(suit: Suit, start: int, cards: tuple[Card, ...]) -> "Meld":
        return Meld(SEQ, tuple(cards), suit=suit, start=start)

    @staticmethod
    def set_of(value: int, cards: tuple[Card, ...]) -> "Meld":
        return Meld(SET, tuple(cards), value=value)


def gap(a: int, b: int) -> int:
    """Cards strictly between two values on a suit line, minimized over
    the ace's two ends.  gap(2,3) == 0, gap(11,13) == 1, gap(10,1) == 3."""
    return min(abs(pa - pb) - 1 for pa in positions(a) for pb in positions(b))


def seq_face(suit: Suit, pos: int) -> Card:
    """The natural card that fills a sequence slot at ``pos`` of ``suit``."""
    return Card(suit, value_at_position(pos))


def is_natural_seq_fill(card: Card, suit: Suit, pos: int) -> bool:
    return not card.is_printed_joker and card.suit == suit and pos in positions(card.value)


def validate_meld(meld: Meld, ctx: JokerContext) -> tuple[str, ...]:
    """Check one meld; returns machine-readable reason codes, () if valid."""
    reasons: list[str] = []
    if any(c == ctx.wildcard for c in meld.cards):
        reasons.append(WILDCARD_PLACED)
    if meld.kind == SEQ:
        assert meld.suit is not None and meld.start is not None
        n = len(meld.cards)
        if n < MIN_MELD:
            reasons.append(UNDERSIZED)
        if meld.start < 1 or meld.start + n - 1 > 14 or n > 13:
            reasons.append(BAD_SPAN)
            return tuple(reasons)
        for i, card in enumerate(meld.cards):
            pos = meld.start + i
            if not is_natural_seq_fill(card, meld.suit, pos) and not ctx.is_joker(card):
                reasons.append(NON_JOKER_FILL)
                break
    elif meld.kind == SET:
        assert meld.value is not None
        n = len(meld.cards)
        if n < MIN_MELD:
            reasons.append(UNDERSIZED)
        if n > MAX_SET:
            reasons.append(OVERSIZED_SET)
        naturals = []
        jokers = 0
        for card in meld.cards:
            if ctx.is_joker(card):
                jokers += 1
            elif card.value == meld.value:
                naturals.append(card)
            else:
                reasons.append(NON_JOKER_FILL)
        if jokers > MAX_SET_JOKERS:
            reasons.append(TOO_MANY_SET_JOKERS)
        if len({c.suit for c in naturals}) != len(naturals):
            reasons.append(DUPLICATE_SUIT)
    else:
        raise ValueError(f"unknown meld kind: {meld.kind}")
    return tuple(reasons)


def is_pure_sequence(meld: Meld, ctx: JokerContext) -> bool:
    """True when every slot of a sequence holds its face natural."""
    if meld.kind != SEQ or validate_meld(meld, ctx):
        return False
    assert meld.suit is not None and meld.start is not None
    return all(
        is_natural_seq_fill(card, meld.suit, meld.start + i)
        for i, card in enumerate(meld.cards)
    )


def render_meld(meld: Meld, ctx: JokerContext) -> str:
    body = " ".join(str(c) for c in meld.cards)
    if meld.kind == SEQ:
        assert meld.suit is not None
        tag = f"SEQ{meld.suit.glyph}[{body}]"
        if is_pure_sequence(meld, ctx):
            tag += " pure"
        return tag
    from .cards import _VALUE_RENDER  # value token shared with card rendering

    return f"SET{_VALUE_RENDER[meld.value]}[{body}]"


@dataclass(frozen=True)
class SeqSpan:
    suit: Suit
    start: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length - 1


@dataclass(frozen=True)
class SetShape:
    value: int
    suits: tuple[Suit, ...]


def sequence_spans(min_len: int = MIN_MELD, max_len: int = 13) -> Iterator[SeqSpan]:
    for suit in Suit:
        for length in range(min_len, max_len + 1):
            for start in range(1, 14 - length + 2):
                yield SeqSpan(suit, start, length)


def set_shapes() -> Iterator[SetShape]:
    from itertools import combinations

    for value in range(1, 14):
        for k in (3, 4):
            for suits in combinations(Suit, k):
                yield SetShape(value, tuple(suits))


def enumerate_melds() -> list[SeqSpan | SetShape]:
    """All structural meld templates: spans per suit and suit-combos per value."""
    out: list[SeqSpan | SetShape] = list(sequence_spans(max_len=14))
    out.extend(set_shapes())
    return out

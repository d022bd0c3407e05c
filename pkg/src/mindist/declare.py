"""Declarations: partitioning 13 cards into melds under the table rules.

A valid declaration partitions the hand into melds such that at least two
melds are sequences and at least one sequence is pure.  ``is_declarable``
decides existence by direct search over the hand's own cards; it never
consults the replacement solver, so the two can cross-check each other.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .cards import PRINTED_JOKER, Card, Hand, JokerContext, positions
from .melds import SEQ, Meld, is_pure_sequence, render_meld, validate_meld

WRONG_SIZE = "wrong-size"
CARD_REUSED = "card-reused"
EXCESS_PRINTED_JOKERS = "excess-printed-jokers"
TOO_FEW_SEQUENCES = "too-few-sequences"
NO_PURE_SEQUENCE = "no-pure-sequence"


@dataclass(frozen=True)
class Declaration:
    melds: tuple[Meld, ...]

    def cards(self) -> list[Card]:
        return [c for m in self.melds for c in m.cards]

    def render(self, ctx: JokerContext) -> str:
        return " | ".join(render_meld(m, ctx) for m in self.melds)


def validate_declaration(decl: Declaration, ctx: JokerContext) -> tuple[str, ...]:
    """All rule violations of a declaration, () when it is valid."""
    reasons: list[str] = []
    for i, meld in enumerate(decl.melds):
        reasons.extend(f"meld{i}:{code}" for code in validate_meld(meld, ctx))

    cards = decl.cards()
    if len(cards) != 13:
        reasons.append(WRONG_SIZE)
    counts = Counter(cards)
    if any(n > 1 for c, n in counts.items() if not c.is_printed_joker):
        reasons.append(CARD_REUSED)
    if counts[PRINTED_JOKER] > ctx.printed_jokers:
        reasons.append(EXCESS_PRINTED_JOKERS)
    if ctx.wildcard in counts:
        pass  # already reported per meld as wildcard-card-placed

    seqs = [m for m in decl.melds if m.kind == SEQ]
    if len(seqs) < 2:
        reasons.append(TOO_FEW_SEQUENCES)
    if not any(is_pure_sequence(m, ctx) for m in seqs):
        reasons.append(NO_PURE_SEQUENCE)
    return tuple(dict.fromkeys(reasons))


def declaration_matches_hand(decl: Declaration, hand: Hand) -> bool:
    return Counter(decl.cards()) == Counter(hand)


# ---------------------------------------------------------------------------
# Declarability search (no replacements)

def is_declarable(hand: Hand, ctx: JokerContext) -> bool:
    """Can the hand, exactly as held, be partitioned into a valid declaration?"""
    plain = sorted(
        (c for c in hand if not ctx.is_joker(c)),
        key=lambda c: (c.suit, min(positions(c.value))),
    )
    jokers = [c for c in hand if ctx.is_joker(c)]
    flex = tuple(c for c in jokers if not c.is_printed_joker)
    return _search(frozenset(range(len(plain))), plain, flex, len(jokers), 0, 0)


def _search(
    todo: frozenset[int],
    plain: list[Card],
    flex: tuple[Card, ...],
    jokers_left: int,
    seqs: int,
    pures: int,
) -> bool:
    if not todo:
        # Only joker cards remain.  They can always close out as impure
        # sequences (all-joker spans are legal), one meld per 3-5 cards.
        r = jokers_left
        if r in (1, 2):
            return False
        return pures >= 1 and seqs + r // 3 >= 2

    i = min(todo)
    card = plain[i]
    assert card.suit is not None
    by_card = {plain[j]: j for j in todo}

    # --- sequences through any position of the first pending card
    for anchor in positions(card.value):
        for length in range(3, 14):
            for start in range(max(1, anchor - length + 1), min(anchor, 15 - length) + 1):
                slots: list[tuple[str, int]] = []
                forced_jokers = 0
                anchored = False
                for pos in range(start, start + length):
                    j = by_card.get(Card(card.suit, 1 if pos in (1, 14) else pos))
                    if j == i:
                        anchored = True
                        continue
                    if j is not None:
                        slots.append(("plain", j))
                        continue
                    fx = next(
                        (
                            k
                            for k, f in enumerate(flex)
                            if f.suit == card.suit and pos in positions(f.value)
                        ),
                        None,
                    )
                    if fx is not None:
                        slots.append(("flex", fx))
                    else:
                        forced_jokers += 1
                if not anchored or forced_jokers > jokers_left:
                    continue
                # Every optional slot is filled by its own card or by a joker.
                budget = jokers_left - forced_jokers
                for n_out in range(0, min(len(slots), budget) + 1):
                    for outs in combinations(range(len(slots)), n_out):
                        out_set = set(outs)
                        nat_flex = [
                            k for s, (kind, k) in enumerate(slots)
                            if s not in out_set and kind == "flex"
                        ]
                        nat_plain = {
                            k for s, (kind, k) in enumerate(slots)
                            if s not in out_set and kind == "plain"
                        }
                        jk = forced_jokers + n_out
                        if jk + len(nat_flex) > jokers_left:
                            continue
                        pure = jk == 0
                        rest_flex = tuple(
                            f for k, f in enumerate(flex) if k not in nat_flex
                        )
                        if _search(
                            todo - {i} - nat_plain,
                            plain,
                            rest_flex,
                            jokers_left - jk - len(nat_flex),
                            seqs + 1,
                            pures + pure,
                        ):
                            return True

    # --- sets of the card's value (no sets of the wildcard value exist)
    same = [j for j in todo if plain[j].value == card.value and j != i]
    for extra in range(0, min(3, len(same)) + 1):
        for others in combinations(same, extra):
            for jk in range(0, min(2, jokers_left) + 1):
                size = 1 + extra + jk
                if not 3 <= size <= 4:
                    continue
                if _search(
                    todo - {i} - set(others),
                    plain,
                    flex,
                    jokers_left - jk,
                    seqs,
                    pures,
                ):
                    return True

    # The first card found no home: the hand cannot be partitioned.
    return False

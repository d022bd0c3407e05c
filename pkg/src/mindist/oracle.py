"""Independent reference solver built on mixed-integer programming.

Encodes target selection as a covering problem over meld templates and
hands it to HiGHS through scipy.  This module intentionally shares
nothing with the branch-and-bound solver beyond the card primitives, so
agreement between the two is a genuine cross-check.

Formulation sketch.  Every sequence span gets an integer multiplicity
(lengths 3-4 may legally repeat once more with jokers) and one integer
joker count per slot; a slot's natural uses are multiplicity minus its
jokers, and single-deck supply caps each card id at one use overall.
Sets appear as two explicit copies per (value, size), picking natural
suits through binaries plus a joker count capped at two.  Chosen slots
must total 13, sequences number at least two, and at least one span is
flagged pure, which reserves a fully natural copy by bounding each
slot's jokers below its multiplicity.  Joker slots balance against
hand and pool joker cards, where a wildcard-value natural placed at
its own face position stops being available as a joker.  The objective
maximizes hand cards kept: natural placements of hand ids plus hosted
hand jokers.
"""

from __future__ import annotations

import numpy as np
from scipy import sparse
from scipy.optimize import Bounds, LinearConstraint, milp

from .cards import (
    HAND_SIZE,
    PRINTED_JOKER,
    Hand,
    JokerContext,
    Suit,
    card_id,
    check_hand_against_context,
    id_to_card,
)
from .declare import Declaration
from .melds import Meld

_INF = float("inf")


def _face_id(suit: int, pos: int) -> int:
    return suit * 13 + (0 if pos in (1, 14) else pos - 1)


def milp_min_dist(hand: Hand, ctx: JokerContext) -> tuple[int, Declaration]:
    """Exact minimum distance and a witness, via the MILP route."""
    check_hand_against_context(hand, ctx)
    wv = ctx.wildcard_value
    wcj_id = card_id(ctx.wildcard)
    hand_ids = {card_id(c) for c in hand if not c.is_printed_joker}
    hand_pj = sum(1 for c in hand if c.is_printed_joker)
    pool_pj = ctx.printed_jokers - hand_pj
    hand_flex = sorted(i for i in hand_ids if i % 13 + 1 == wv)
    pool_flex = sorted(
        i for i in range(52)
        if i % 13 + 1 == wv and i not in hand_ids and i != wcj_id
    )

    nv = 0

    def new_var(n: int = 1) -> int:
        nonlocal nv
        first = nv
        nv += n
        return first

    seqs = []  # (suit,start,length,max_copies,y,pure,[(slot_face_id, j_var)])
    for suit in range(4):
        for length in range(3, 14):
            for start in range(1, 16 - length):
                copies = 2 if length <= 4 else 1
                y = new_var()
                pure = new_var()
                slots = [
                    (_face_id(suit, pos), new_var())
                    for pos in range(start, start + length)
                ]
                seqs.append((suit, start, length, copies, y, pure, slots))

    sets = []  # (value,size,y,[s_suit0..3],nj)
    for value in range(1, 14):
        if value == wv:
            continue  # every card of this value is a joker
        for size in (3, 4):
            for _ in range(2):
                y = new_var()
                s = [new_var() for _ in range(4)]
                nj = new_var()
                sets.append((value, size, y, s, nj))

    jh = new_var()  # hand jokers hosted
    jp = new_var()  # pool jokers consumed

    rows: list[tuple[float, float]] = []
    data: list[float] = []
    ri: list[int] = []
    ci: list[int] = []

    def add(coeffs, lb, ub) -> None:
        r = len(rows)
        rows.append((lb, ub))
        for col, val in coeffs:
            ri.append(r)
            ci.append(col)
            data.append(val)

    usage: dict[int, list[tuple[int, float]]] = {i: [] for i in range(52)}
    slot_sum: list[tuple[int, float]] = []
    joker_sum: list[tuple[int, float]] = []
    obj: dict[int, float] = {}

    for _, _, length, _, y, pure, slots in seqs:
        slot_sum.append((y, length))
        add([(pure, 1), (y, -1)], -_INF, 0)
        for f, j in slots:
            # jokers per slot stay below the multiplicity when a pure
            # copy is reserved: j <= y - pure
            add([(j, 1), (pure, 1), (y, -1)], -_INF, 0)
            usage[f].append((y, 1))
            usage[f].append((j, -1))
            joker_sum.append((j, 1))
            if f in hand_ids:
                obj[y] = obj.get(y, 0) + 1
                obj[j] = obj.get(j, 0) - 1

    for value, size, y, s, nj in sets:
        slot_sum.append((y, size))
        add([(s[0], 1), (s[1], 1), (s[2], 1), (s[3], 1), (nj, 1), (y, -size)], 0, 0)
        add([(nj, 1), (y, -2)], -_INF, 0)
        joker_sum.append((nj, 1))
        for suit in range(4):
            f = suit * 13 + value - 1
            usage[f].append((s[suit], 1))
            if f in hand_ids:
                obj[s[suit]] = obj.get(s[suit], 0) + 1

    for i in range(52):
        if usage[i]:
            add(usage[i], -_INF, 0 if i == wcj_id else 1)
    add(slot_sum, HAND_SIZE, HAND_SIZE)
    add([(y, 1) for _, _, _, _, y, _, _ in seqs], 2, _INF)
    add([(pure, 1) for _, _, _, _, _, pure, _ in seqs], 1, _INF)
    add(joker_sum + [(jh, -1), (jp, -1)], 0, 0)

    # A wildcard-value natural is a joker card unless placed at its face.
    hand_j_row = [(jh, 1)]
    for i in hand_flex:
        hand_j_row.extend(usage[i])
    add(hand_j_row, -_INF, hand_pj + len(hand_flex))
    pool_j_row = [(jp, 1)]
    for i in pool_flex:
        pool_j_row.extend(usage[i])
    add(pool_j_row, -_INF, pool_pj + len(pool_flex))

    obj[jh] = 1.0
    c = np.zeros(nv)
    for col, val in obj.items():
        c[col] = -val  # milp minimizes

    lo = np.zeros(nv)
    hi = np.ones(nv)
    for _, _, _, copies, y, _, slots in seqs:
        hi[y] = copies
        for _, j in slots:
            hi[j] = copies
    for _, _, _, _, nj in sets:
        hi[nj] = 2
    hi[jh] = hi[jp] = ctx.printed_jokers + 3

    A = sparse.csc_array(
        (data, (ri, ci)), shape=(len(rows), nv), dtype=float
    )
    lbs = np.array([r[0] for r in rows])
    ubs = np.array([r[1] for r in rows])
    res = milp(
        c,
        constraints=LinearConstraint(A, lbs, ubs),
        integrality=np.ones(nv),
        bounds=Bounds(lo, hi),
    )
    if res.status != 0:
        raise RuntimeError(f"reference solve failed: {res.message}")
    x = np.round(res.x).astype(int)
    kept = int(round(-res.fun))

    # Materialize the witness.  Joker slots draw hand joker cards first
    # (exactly jh of them, matching the objective), then pool jokers.
    placed = {
        i for i in range(52)
        if usage[i] and sum(v * x[col] for col, v in usage[i]) >= 1
    }
    joker_cards = [PRINTED_JOKER] * hand_pj
    joker_cards += [id_to_card(i) for i in hand_flex if i not in placed]
    pool_jokers = [id_to_card(i) for i in pool_flex if i not in placed]
    pool_jokers += [PRINTED_JOKER] * pool_pj
    n_hand_j = int(x[jh])
    supply = joker_cards[:n_hand_j] + pool_jokers
    take = iter(supply).__next__

    melds = []
    for suit, start, _, _, y, _, slots in seqs:
        if not x[y]:
            continue
        # Supply caps naturals at one per slot, so any second copy of
        # the span is entirely jokers.
        cards = tuple(
            take() if x[j] >= x[y] else id_to_card(f) for f, j in slots
        )
        melds.append(Meld.sequence(Suit(suit), start, cards))
        for _ in range(int(x[y]) - 1):
            melds.append(
                Meld.sequence(Suit(suit), start, tuple(take() for _ in slots))
            )
    for value, _, y, s, nj in sets:
        if not x[y]:
            continue
        cards = tuple(
            id_to_card(suit * 13 + value - 1) for suit in range(4) if x[s[suit]]
        ) + tuple(take() for _ in range(int(x[nj])))
        melds.append(Meld.set_of(value, cards))

    return HAND_SIZE - kept, Declaration(tuple(melds))

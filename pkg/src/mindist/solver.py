"""Exact minimum-replacement distance via branch and bound.

``distance`` counts the hand cards a target would discard: 13 minus the
multiset overlap.  ``min_dist`` searches for a declarable 13-card target
maximizing that overlap under single-deck supply: the face-up wildcard
is out of play, and a card already in hand cannot be drawn again.

Search layout.  Every declaration owns a pure sequence, so the outer
loop designates its exact span first and claims the span's cards up
front; card conflicts then charge to later melds, which joker around
them.  The inner depth-first pass decides hand cards in canonical
order: the first undecided card either anchors a meld (enumerated
exhaustively, with keep-or-joker branching for other in-span hand
cards) or leaves the hand.  Joker cards never branch: their placement
is an accounting problem solved exactly at each leaf, where remaining
slots are closed by a filler search over the open pool.

Joker accounting at a leaf.  Hand jokers are hosted for +1 kept each,
in this order: joker slots of chosen melds, filler slots, then "flips"
(a claimed pool card in a chosen meld hands its slot to a joker,
releasing the card).  Flips respect the designated pure sequence and
the two-joker cap of sets.  The filler search may also buy a released
claim as a natural fill when supply is tight; that fallback only runs
when the plain search cannot reach the hosting ceiling.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .cards import (
    HAND_SIZE,
    PRINTED_JOKER,
    Card,
    Hand,
    JokerContext,
    Suit,
    card_id,
    check_hand_against_context,
    id_to_card,
    positions,
)
from .declare import Declaration
from .melds import SEQ, SET, Meld

# Meld slot fill tags used internally by the solver.
_HAND = 0  # a kept hand card (payload: loop index)
_POOL = 1  # a claimed pool card (payload: card id)
_JOKER = 2  # a joker card, assigned at materialization time


@dataclass(frozen=True)
class MinDistResult:
    value: int
    witness: Declaration
    kept: tuple[Card, ...]
    replacements: tuple[tuple[Card, Card], ...]


def distance(hand: Hand, target: Iterable[Card]) -> int:
    """Replacements needed to turn ``hand`` into ``target`` (multisets)."""
    overlap = Counter(hand) & Counter(target)
    return HAND_SIZE - sum(overlap.values())


def min_dist(hand: Hand, ctx: JokerContext, at_most: int | None = None) -> MinDistResult:
    """Exact minimum distance with a witness declaration.

    ``at_most`` enables early exit: the search stops as soon as a target
    within that distance is found and returns it.  The reported value is
    then an achievable upper bound rather than the proven minimum.
    """
    check_hand_against_context(hand, ctx)
    return _Solver(hand, ctx, at_most).solve()


def _valid_remainder(r: int) -> bool:
    return r == 0 or r >= 3


def _child_score(kept, n_keep, sl, undec_plain, jh_base, cap, kf_ub):
    """Upper bound on final kept after committing a meld (cheap _bound).

    ``kf_ub`` caps how many of the meld's keeps may be wildcard-value
    naturals; those leave the joker supply but refund a slot of the
    plain-card budget, so the two regimes below bracket every split.
    """
    # Unclamped regime: every remaining plain card fits in future slots.
    delta = sl - undec_plain + n_keep
    hi = -1
    if delta >= 0:
        a = undec_plain - n_keep + jh_base
        b = cap + sl
        hi = a if a < b else b
    # Clamped regime: future slots bind; reachable with enough flex keeps.
    kf_star = delta if delta > 0 else 0
    if kf_star <= kf_ub:
        j_eff = jh_base - kf_star
        t2 = sl + (j_eff if j_eff < cap else cap)
        if t2 > hi:
            hi = t2
    return kept + n_keep + hi


def _face_id(suit: int, pos: int) -> int:
    return suit * 13 + (0 if pos in (1, 14) else pos - 1)


class _Solver:
    def __init__(self, hand: Hand, ctx: JokerContext, at_most: int | None):
        self.hand = hand
        self.ctx = ctx
        self.stop_kept = HAND_SIZE + 1 if at_most is None else HAND_SIZE - at_most
        wv = ctx.wildcard_value
        self.wv = wv
        self.wcj_id = card_id(ctx.wildcard)

        # Loop cards: all naturals, canonical order.  Printed jokers are
        # pure arithmetic; wildcard-value naturals ("flex") loop too, but
        # their only natural home is their own face slot in a sequence.
        naturals = [c for c in hand if not c.is_printed_joker]
        naturals.sort(key=lambda c: (c.suit, min(positions(c.value))))
        self.cards = naturals
        self.n = len(naturals)
        self.ids = [card_id(c) for c in naturals]
        self.is_flex = [c.value == wv for c in naturals]
        self.id2loop = {cid: i for i, cid in enumerate(self.ids)}
        self.state = [0] * self.n  # 0 undecided, 1 kept, 2 out

        self.hand_pj = len(hand) - self.n
        self.pooled_flex = 0  # flex cards sent to the joker supply

        self.pool = set(range(52)) - set(self.ids) - {self.wcj_id}
        self.pool_joker_ids = {cid for cid in self.pool if cid % 13 + 1 == wv}
        self.pool_pj = ctx.printed_jokers - self.hand_pj
        self.total_pool_jokers = len(self.pool_joker_ids) + self.pool_pj
        self.max_joker_cards = self.hand_pj + sum(self.is_flex) + self.total_pool_jokers

        self.used: set[int] = set()
        self.joker_faces = 0  # pool joker ids claimed as natural face fills
        self.kept = 0
        self.slots = 0
        self.n_seqs = 0
        self.j_slots = 0
        self.flip_cap = 0
        self.chosen: list[dict] = []
        self.undec_plain = sum(1 for fx in self.is_flex if not fx)
        self.undec_flex = sum(self.is_flex)
        self.phase_b = False

        self.best_kept = -1
        self.best: tuple | None = None
        self.stopped = False

        # Static tables for the hot loops: per-card suit/value/positions,
        # pool joker flags, claim flags mirroring ``used``, and for every
        # loop card the sequence spans it can anchor, with each slot
        # pre-classified (0 anchor, 1 other hand card, 2 always-joker,
        # 3 pool claim).
        self.c_suit = [int(c.suit) for c in naturals]
        self.c_val = [c.value for c in naturals]
        self.c_pos = [positions(c.value) for c in naturals]
        self.pj_arr = bytearray(53)
        for f in self.pool_joker_ids:
            self.pj_arr[f] = 1
        self.used_arr = bytearray(53)

        self.seq_tab: list[list[tuple[int, int, list]]] = []
        for i in range(self.n):
            suit = self.c_suit[i]
            entries: list[tuple[int, int, list]] = []
            for anchor in self.c_pos[i]:
                for length in range(3, 14):
                    for start in range(
                        max(1, anchor - length + 1), min(anchor, 15 - length) + 1
                    ):
                        slots = []
                        for pos in range(start, start + length):
                            f = _face_id(suit, pos)
                            if f == self.wcj_id:
                                slots.append((2, 0, 0))
                                continue
                            j = self.id2loop.get(f)
                            if j == i:
                                slots.append((0, j, 0))
                            elif j is not None:
                                slots.append((1, j, 0))
                            else:
                                slots.append((3, f, self.pj_arr[f]))
                        entries.append((length, start, slots))
            self.seq_tab.append(entries)

        self.val_loops: dict[int, list[int]] = {}
        for i in range(self.n):
            if not self.is_flex[i]:
                self.val_loops.setdefault(self.c_val[i], []).append(i)
        self.set_pool_ids = {
            v: sorted(f for f in self.pool if f % 13 + 1 == v)
            for v in self.val_loops
        }

    # -- stage 1: designate the pure sequence ------------------------------

    def solve(self) -> MinDistResult:
        # Phase A: designate each pure span holding at least one hand card.
        # Declarations whose pure sequences keep nothing are covered by
        # phase B, where the leaf filler is required to place the pure span
        # (chosen melds that come out pure are redundant there: converting
        # a free face claim from joker to natural never loses kept cards,
        # so such declarations already appear under some phase A span).
        # Nothing can beat the root relaxation; reaching it ends the search.
        self.stop_kept = min(self.stop_kept, self._bound())

        spans = []
        for suit in range(4):
            hole = (
                set(positions(self.wv)) if self.ctx.wildcard.suit == suit else set()
            )
            for length in range(3, 14):
                if not _valid_remainder(HAND_SIZE - length):
                    continue
                for start in range(1, 16 - length):
                    span = range(start, start + length)
                    if hole & set(span):
                        continue
                    keeps = [
                        i
                        for pos in span
                        if (i := self.id2loop.get(_face_id(suit, pos))) is not None
                    ]
                    if keeps:
                        spans.append((len(keeps), suit, start, length, keeps))
        spans.sort(key=lambda s: (-s[0], s[1], s[2], s[3]))

        for n_keep, suit, start, length, keeps in spans:
            if self.stopped:
                break
            if n_keep + (HAND_SIZE - length) <= self.best_kept:
                continue
            fills: list[tuple] = []
            claims: list[int] = []
            for pos in range(start, start + length):
                f = _face_id(suit, pos)
                i = self.id2loop.get(f)
                if i is not None:
                    fills.append((_HAND, i))
                else:
                    fills.append((_POOL, f))
                    claims.append(f)
            jf = sum(1 for f in claims if f in self.pool_joker_ids)
            rec = {
                "kind": SEQ,
                "suit": suit,
                "start": start,
                "value": None,
                "fills": fills,
                "designated": True,
                "set_jokers": 0,
                "n_j": 0,
            }
            self._apply(rec, keeps, claims, jf)
            self._dfs(0)
            self._undo(rec, keeps, claims, jf)

        if not self.stopped:
            self.phase_b = True
            self._dfs(0)
            self.phase_b = False

        assert self.best is not None, "every hand admits some declaration"
        return self._result()

    # -- shared apply/undo for a chosen meld --------------------------------

    def _apply(self, rec, keeps, claims, jf) -> None:
        for i in keeps:
            self.state[i] = 1
            if self.is_flex[i]:
                self.undec_flex -= 1
            else:
                self.undec_plain -= 1
        self.kept += len(keeps)
        self.slots += len(rec["fills"])
        self.n_seqs += rec["kind"] == SEQ
        self.j_slots += rec["n_j"]
        self.used.update(claims)
        for f in claims:
            self.used_arr[f] = 1
        self.joker_faces += jf
        if not rec["designated"]:
            if rec["kind"] == SEQ:
                self.flip_cap += len(claims)
            else:
                self.flip_cap += min(len(claims), 2 - rec["set_jokers"])
        self.chosen.append(rec)

    def _undo(self, rec, keeps, claims, jf) -> None:
        self.chosen.pop()
        if not rec["designated"]:
            if rec["kind"] == SEQ:
                self.flip_cap -= len(claims)
            else:
                self.flip_cap -= min(len(claims), 2 - rec["set_jokers"])
        self.joker_faces -= jf
        self.used.difference_update(claims)
        for f in claims:
            self.used_arr[f] = 0
        self.j_slots -= rec["n_j"]
        self.n_seqs -= rec["kind"] == SEQ
        self.slots -= len(rec["fills"])
        self.kept -= len(keeps)
        for i in keeps:
            self.state[i] = 0
            if self.is_flex[i]:
                self.undec_flex += 1
            else:
                self.undec_plain += 1

    # -- bound --------------------------------------------------------------

    def _bound(self) -> int:
        slots_left = HAND_SIZE - self.slots
        base_cap = self.j_slots + self.flip_cap
        quick = self.kept + slots_left + base_cap
        if quick <= self.best_kept:
            return quick
        jh_pot = self.hand_pj + self.pooled_flex + self.undec_flex

        nat = 0
        if slots_left and self.undec_plain:
            state = self.state
            is_flex = self.is_flex
            by_suit: list[list[int]] = [[], [], [], []]
            val_counts = [0] * 14
            for i in range(self.n):
                if state[i] or is_flex[i]:
                    continue
                by_suit[self.c_suit[i]].extend(self.c_pos[i])
                val_counts[self.c_val[i]] += 1
            for ps in by_suit:
                ps.sort()
            best_set = max(val_counts)
            w = [0] * (slots_left + 1)
            for length in range(3, slots_left + 1):
                m = 0
                for ps in by_suit:
                    j = 0
                    for i in range(len(ps)):
                        while ps[i] - ps[j] >= length:
                            j += 1
                        if i - j + 1 > m:
                            m = i - j + 1
                if length <= 4 and best_set > m:
                    m = min(best_set, length)
                w[length] = m
            dp = [-1] * (slots_left + 1)
            dp[0] = 0
            for t in range(3, slots_left + 1):
                for length in range(3, t + 1):
                    if dp[t - length] >= 0 and dp[t - length] + w[length] > dp[t]:
                        dp[t] = dp[t - length] + w[length]
            nat = max(dp[slots_left], 0)

        # Jokers host in open joker slots, flipped claims, or leftover
        # future slots; every placement keeps at most one hand joker.
        cap = base_cap + (slots_left - nat)
        return self.kept + nat + min(jh_pot, cap)

    # -- stage 2: decide hand cards ------------------------------------------

    def _dfs(self, idx: int) -> None:
        if self.stopped:
            return
        while idx < self.n and self.state[idx]:
            idx += 1
        if idx == self.n:
            self._leaf()
            return
        if self._bound() <= self.best_kept:
            return

        options = self._seq_options(idx)
        if not self.is_flex[idx]:
            options.extend(self._set_options(idx))
        options.sort(key=lambda t: (-t[1], t[2]))
        for hi, n_keep, size, rec, keeps, claims, jf in options:
            if hi <= self.best_kept:
                continue
            self._apply(rec, keeps, claims, jf)
            self._dfs(idx + 1)
            self._undo(rec, keeps, claims, jf)
            if self.stopped:
                return

        # Last branch: the card leaves the hand.  A flex card instead
        # joins the joker supply (strictly better than discarding it).
        self.state[idx] = 2
        if self.is_flex[idx]:
            self.pooled_flex += 1
            self.undec_flex -= 1
        else:
            self.undec_plain -= 1
        self._dfs(idx + 1)
        if self.is_flex[idx]:
            self.pooled_flex -= 1
            self.undec_flex += 1
        else:
            self.undec_plain += 1
        self.state[idx] = 0

    def _seq_options(self, idx: int) -> list[tuple]:
        suit = self.c_suit[idx]
        slots_left = HAND_SIZE - self.slots
        max_len = min(13, slots_left)
        state = self.state
        used_arr = self.used_arr
        budget_base = self.max_joker_cards - self.joker_faces - self.j_slots
        joker = (_JOKER,)
        # Child-score ingredients (an O(1) relaxation of _bound).  The
        # flex-kept count cancels out of the unclamped branch, so scores
        # need nothing from the concrete keep subset but its size.
        kept = self.kept
        best = self.best_kept
        jh_base = self.hand_pj + self.pooled_flex + self.undec_flex
        cap_base = self.j_slots + self.flip_cap
        undec_plain = self.undec_plain
        phase_b = self.phase_b
        out: list[tuple] = []
        for length, start, slots in self.seq_tab[idx]:
            if length > max_len or not _valid_remainder(slots_left - length):
                continue
            base: list[tuple] = []
            optional: list[int] = []
            claims: list[int] = []
            forced_j = 0
            jf = 0
            flex_in = 1 if self.is_flex[idx] else 0
            for code, payload, is_pj in slots:
                if code == 3:
                    if used_arr[payload]:
                        base.append(joker)
                        forced_j += 1
                    else:
                        base.append((_POOL, payload))
                        claims.append(payload)
                        jf += is_pj
                elif code == 1:
                    if state[payload] == 0:
                        optional.append(len(base))
                        base.append((_HAND, payload))
                        flex_in += self.is_flex[payload]
                    else:
                        base.append(joker)
                        forced_j += 1
                elif code == 0:
                    base.append((_HAND, payload))
                else:
                    base.append(joker)
                    forced_j += 1
            budget = budget_base - forced_j
            if budget < 0:
                continue
            sl = slots_left - length
            fc = cap_base + len(claims)
            for n_out in range(0, min(len(optional), budget) + 1):
                if phase_b and forced_j + n_out == 0:
                    # Pure chosen melds always keep their anchor, so
                    # phase A already designated this span; in phase B
                    # the filler provides the only pure sequence.
                    continue
                n_keep = 1 + len(optional) - n_out
                cap = fc + forced_j + n_out
                hi = _child_score(
                    kept, n_keep, sl, undec_plain, jh_base, cap,
                    flex_in if flex_in < n_keep else n_keep,
                )
                if hi <= best:
                    continue
                for outs in combinations(optional, n_out):
                    fills = list(base)
                    keeps = [idx]
                    for s in optional:
                        if s in outs:
                            fills[s] = joker
                        else:
                            keeps.append(fills[s][1])
                    rec = {
                        "kind": SEQ,
                        "suit": suit,
                        "start": start,
                        "value": None,
                        "fills": fills,
                        "designated": False,
                        "set_jokers": 0,
                        "n_j": forced_j + n_out,
                    }
                    out.append((hi, n_keep, length, rec, keeps, claims, jf))
        return out

    def _set_options(self, idx: int) -> list[tuple]:
        v = self.c_val[idx]
        slots_left = HAND_SIZE - self.slots
        others = [j for j in self.val_loops[v] if j != idx and self.state[j] == 0]
        avail = [f for f in self.set_pool_ids[v] if not self.used_arr[f]]
        kept = self.kept
        best = self.best_kept
        jh_base = self.hand_pj + self.pooled_flex + self.undec_flex
        cap_base = self.j_slots + self.flip_cap
        undec_plain = self.undec_plain
        out: list[tuple] = []
        for extra in range(0, len(others) + 1):
            for group in combinations(others, extra):
                keeps = [idx, *group]
                n_keep = len(keeps)
                for size in (3, 4):
                    if size < n_keep or size > slots_left:
                        continue
                    if not _valid_remainder(slots_left - size):
                        continue
                    need = size - n_keep
                    sl = slots_left - size
                    for n_j in range(0, min(2, need) + 1):
                        n_pool = need - n_j
                        if n_pool > len(avail):
                            continue
                        if self.j_slots + n_j > self.max_joker_cards - self.joker_faces:
                            continue
                        cap = cap_base + n_j + min(n_pool, 2 - n_j)
                        hi = _child_score(
                            kept, n_keep, sl, undec_plain, jh_base, cap, 0
                        )
                        if hi <= best:
                            continue
                        for pool_ids in combinations(avail, n_pool):
                            fills = [(_HAND, i) for i in keeps]
                            fills += [(_POOL, f) for f in pool_ids]
                            fills += [(_JOKER,)] * n_j
                            rec = {
                                "kind": SET,
                                "suit": None,
                                "start": None,
                                "value": v,
                                "fills": fills,
                                "designated": False,
                                "set_jokers": n_j,
                                "n_j": n_j,
                            }
                            out.append((hi, n_keep, size, rec, keeps, list(pool_ids), 0))
        return out

    # -- leaf: joker arithmetic and fillers -----------------------------------

    def _leaf(self) -> None:
        r = HAND_SIZE - self.slots
        jh = self.hand_pj + self.pooled_flex
        hosted1 = min(jh, self.j_slots)
        pool_need = self.j_slots - hosted1
        pjl = self.total_pool_jokers - self.joker_faces - pool_need
        if pjl < 0:
            return
        jh_rem = jh - hosted1

        if r == 0:
            # In phase B the pure sequence must come from the filler.
            if self.phase_b or self.n_seqs < 2:
                return
            flips = min(jh_rem, self.flip_cap)
            total = self.kept + hosted1 + flips
            if total > self.best_kept:
                self._record(total, [], flips, [])
            return

        need_seqs = max(0, 2 - self.n_seqs)
        ceiling = self.kept + hosted1 + min(jh_rem, r + self.flip_cap)
        if ceiling <= self.best_kept:
            return

        avail = self.pool - self.used
        filler = _fill_slots(
            r, need_seqs, self.phase_b, jh_rem, pjl, avail, self.wv, None
        )
        hosted_goal = min(jh_rem, r)
        if filler is None or filler[0] < hosted_goal:
            rel_groups = self._release_groups()
            if rel_groups:
                alt = _fill_slots(
                    r, need_seqs, self.phase_b, jh_rem, pjl, avail, self.wv, rel_groups
                )
                if alt is not None and (filler is None or alt[0] > filler[0]):
                    filler = alt
        if filler is None:
            return
        hosted2, melds, releases = filler

        rel_per_meld = Counter(m for m, _ in releases)
        flip_room = 0
        for mi, rec in enumerate(self.chosen):
            if rec["designated"]:
                continue
            n_claims = sum(1 for f in rec["fills"] if f[0] == _POOL) - rel_per_meld[mi]
            if rec["kind"] == SET:
                n_claims = min(n_claims, 2 - rec["set_jokers"] - rel_per_meld[mi])
            flip_room += max(0, n_claims)

        # Hosted releases already spent hand jokers (one per release that
        # was bought with a host unit); _fill_slots folds that into hosted2.
        flips = min(jh_rem - hosted2, flip_room)
        total = self.kept + hosted1 + hosted2 + flips
        if total > self.best_kept:
            self._record(total, melds, flips, releases)

    def _release_groups(self) -> list[tuple[int, int, list[int]]]:
        """Claimed ids a leaf filler may buy back: (meld index, cap, ids)."""
        groups = []
        for mi, rec in enumerate(self.chosen):
            if rec["designated"]:
                continue
            ids = [f[1] for f in rec["fills"] if f[0] == _POOL]
            if not ids:
                continue
            cap = len(ids) if rec["kind"] == SEQ else min(
                len(ids), 2 - rec["set_jokers"]
            )
            if cap > 0:
                groups.append((mi, cap, ids))
        return groups

    # -- materialization -------------------------------------------------------

    def _record(self, total, filler_melds, flips, releases) -> None:
        self.best_kept = total
        self.best = (
            [dict(rec, fills=list(rec["fills"])) for rec in self.chosen],
            [dict(rec, fills=list(rec["fills"])) for rec in filler_melds],
            flips,
            list(releases),
        )
        if total >= self.stop_kept:
            self.stopped = True

    def _result(self) -> MinDistResult:
        chosen, filler_melds, flips, releases = self.best

        # Releases: the bought-back claim slots host jokers instead.
        released_ids: list[int] = []
        for mi, f in releases:
            rec = chosen[mi]
            s = rec["fills"].index((_POOL, f))
            rec["fills"][s] = (_JOKER,)
            released_ids.append(f)

        # Flips: leftover hand jokers displace claimed pool cards, sets
        # keeping at most two joker slots, the designated meld untouched.
        to_flip = flips
        for rec in chosen:
            if to_flip == 0:
                break
            if rec["designated"]:
                continue
            if rec["kind"] == SET:
                room = 2 - sum(1 for f in rec["fills"] if f[0] == _JOKER)
            else:
                room = HAND_SIZE
            for s, f in enumerate(rec["fills"]):
                if to_flip and room and f[0] == _POOL:
                    rec["fills"][s] = (_JOKER,)
                    to_flip -= 1
                    room -= 1
        assert to_flip == 0

        all_melds = (
            sorted(chosen, key=lambda rec: not rec["designated"]) + filler_melds
        )

        kept_loop = {
            f[1] for rec in all_melds for f in rec["fills"] if f[0] == _HAND
        }
        hand_jokers = [PRINTED_JOKER] * self.hand_pj
        hand_jokers += [
            self.cards[i]
            for i in range(self.n)
            if self.is_flex[i] and i not in kept_loop
        ]
        claimed = {
            f[1] for rec in all_melds for f in rec["fills"] if f[0] == _POOL
        }
        pool_jokers = [
            id_to_card(f) for f in sorted(self.pool_joker_ids - claimed)
        ]
        pool_jokers += [PRINTED_JOKER] * self.pool_pj

        hosted_left = self.best_kept - self.kept_of(all_melds)

        def take_joker() -> Card:
            nonlocal hosted_left
            if hosted_left > 0 and hand_jokers:
                hosted_left -= 1
                return hand_jokers.pop(0)
            return pool_jokers.pop(0)

        melds = []
        for rec in all_melds:
            cards = []
            for f in rec["fills"]:
                if f[0] == _HAND:
                    cards.append(self.cards[f[1]])
                elif f[0] == _POOL:
                    cards.append(id_to_card(f[1]))
                else:
                    cards.append(take_joker())
            if rec["kind"] == SEQ:
                melds.append(Meld.sequence(Suit(rec["suit"]), rec["start"], tuple(cards)))
            else:
                melds.append(Meld.set_of(rec["value"], tuple(cards)))

        decl = Declaration(tuple(melds))
        target = Counter(decl.cards())
        hand_ms = Counter(self.hand)
        kept_ms = hand_ms & target
        removed = sorted((hand_ms - kept_ms).elements(), key=card_id)
        added = sorted((target - kept_ms).elements(), key=card_id)
        kept = tuple(sorted(kept_ms.elements(), key=card_id))
        value = HAND_SIZE - sum(kept_ms.values())
        assert value == len(removed) == len(added)
        return MinDistResult(value, decl, kept, tuple(zip(removed, added)))

    def kept_of(self, all_melds) -> int:
        return sum(1 for rec in all_melds for f in rec["fills"] if f[0] == _HAND)


# ---------------------------------------------------------------------------
# Leaf fillers: melds built from the open pool plus hosted hand jokers.


def _fill_slots(
    r: int,
    need_seqs: int,
    need_pure: bool,
    host: int,
    pjl: int,
    avail: set[int],
    wv: int,
    rel_groups: list[tuple[int, int, list[int]]] | None,
):
    """Close ``r`` slots with pool-backed melds, hosting hand jokers.

    Returns (hosted, meld records, releases) maximizing hosted, or None.
    Hosted and pool jokers fill any sequence slot (all-joker sequences
    are legal); sets cap joker slots at two.  With ``need_pure`` the
    result must include a sequence with every slot filled naturally.
    When ``rel_groups`` is given, claimed ids of chosen melds may be
    bought back as natural fills, paying one hand joker (which then
    hosts, +1 kept) or one pool joker for the vacated slot.
    """
    faces = sorted(f for f in avail if f % 13 + 1 != wv)
    wv_faces = sorted(f for f in avail if f % 13 + 1 == wv)
    val_ids: dict[int, list[int]] = {}
    for f in faces:
        val_ids.setdefault(f % 13 + 1, []).append(f)

    rel_owner: dict[int, int] = {}
    rel_cap0: list[int] = []
    if rel_groups:
        for gi, (_, cap, ids) in enumerate(rel_groups):
            rel_cap0.append(cap)
            for f in ids:
                rel_owner[f] = gi

    ceiling = min(host, r)
    best: list[tuple] = [(-1, [], [])]

    def face_open(f: int, used_local: set[int]) -> bool:
        return f in avail and f not in used_local

    def rec_fill(
        r_left, need_seq, pure_due, h, pj, used_local, rel_cap, melds, rels, hosted
    ):
        if best[0][0] >= ceiling:
            return
        if hosted + min(h, r_left) <= best[0][0]:
            return
        if r_left == 0:
            if need_seq <= 0 and not pure_due and hosted > best[0][0]:
                best[0] = (
                    hosted,
                    [dict(m, fills=list(m["fills"])) for m in melds],
                    list(rels),
                )
            return
        for length in range(3, r_left + 1):
            if not _valid_remainder(r_left - length):
                continue
            # all-joker sequence, one canonical copy per length
            h_here = min(h, length)
            if length - h_here <= pj and not (pure_due and r_left - length < 3):
                rec = {
                    "kind": SEQ,
                    "suit": 0,
                    "start": 1,
                    "value": None,
                    "fills": [(_JOKER,)] * length,
                    "designated": False,
                    "set_jokers": 0,
                }
                rec_fill(
                    r_left - length,
                    need_seq - 1,
                    pure_due,
                    h - h_here,
                    pj - (length - h_here),
                    used_local,
                    rel_cap,
                    melds + [rec],
                    rels,
                    hosted + h_here,
                )
                if best[0][0] >= ceiling:
                    return
            # sequences with at least one natural fill
            for suit in range(4):
                for start in range(1, 16 - length):
                    span = range(start, start + length)
                    open_slots = []
                    for k, pos in enumerate(span):
                        f = _face_id(suit, pos)
                        if face_open(f, used_local):
                            open_slots.append((k, f, "A"))
                        elif (
                            rel_groups
                            and f in rel_owner
                            and rel_cap[rel_owner[f]] > 0
                            and f not in used_local
                        ):
                            open_slots.append((k, f, "R"))
                    if not open_slots:
                        continue
                    for sz in range(len(open_slots), 0, -1):
                        for takes in combinations(open_slots, sz):
                            # a fresh wildcard-value face spends a pool joker;
                            # a released one was already paid for at claim time
                            n_wv = sum(
                                1 for _, f, t in takes if t == "A" and f % 13 + 1 == wv
                            )
                            n_rel = sum(1 for _, _, t in takes if t == "R")
                            holes = length - sz
                            h_here = min(h, holes)
                            # releases prefer the hosting payment: +1 kept
                            rel_host = min(n_rel, h - h_here)
                            rel_pool = n_rel - rel_host
                            if holes - h_here + n_wv + rel_pool > pj:
                                continue
                            caps = list(rel_cap)
                            ok = True
                            for _, f, t in takes:
                                if t == "R":
                                    gi = rel_owner[f]
                                    if caps[gi] == 0:
                                        ok = False
                                        break
                                    caps[gi] -= 1
                            if not ok:
                                continue
                            take_pos = {k: f for k, f, _ in takes}
                            fills = [
                                (_POOL, take_pos[k]) if k in take_pos else (_JOKER,)
                                for k in range(length)
                            ]
                            rec = {
                                "kind": SEQ,
                                "suit": suit,
                                "start": start,
                                "value": None,
                                "fills": fills,
                                "designated": False,
                                "set_jokers": 0,
                            }
                            new_rels = rels + [
                                (rel_groups[rel_owner[f]][0], f)
                                for _, f, t in takes
                                if t == "R"
                            ]
                            rec_fill(
                                r_left - length,
                                need_seq - 1,
                                pure_due and holes > 0,
                                h - h_here - rel_host,
                                pj - (holes - h_here) - n_wv - rel_pool,
                                used_local | {f for _, f, _ in takes},
                                caps,
                                melds + [rec],
                                new_rels,
                                hosted + h_here + rel_host,
                            )
                            if best[0][0] >= ceiling:
                                return
            # sets
            if length <= 4:
                set_values = set(val_ids)
                if rel_groups:
                    set_values.update(
                        f % 13 + 1 for f in rel_owner if f % 13 + 1 != wv
                    )
                for v in sorted(set_values):
                    pool_v = [f for f in val_ids.get(v, ()) if f not in used_local]
                    rel_v = [
                        f
                        for f in (rel_owner if rel_groups else ())
                        if f % 13 + 1 == v and f not in used_local
                    ]
                    for n_j in range(0, min(2, length - 1) + 1):
                        n_nat = length - n_j
                        if n_nat < 1 or n_nat > len(pool_v) + len(rel_v):
                            continue
                        h_here = min(h, n_j)
                        for chosen_nat in combinations(sorted(pool_v + rel_v), n_nat):
                            suits = {f // 13 for f in chosen_nat}
                            if len(suits) != n_nat:
                                continue
                            n_rel = sum(1 for f in chosen_nat if f in rel_owner and f not in pool_v)
                            rel_host = min(n_rel, h - h_here)
                            rel_pool = n_rel - rel_host
                            if n_j - h_here + rel_pool > pj:
                                continue
                            caps = list(rel_cap)
                            ok = True
                            for f in chosen_nat:
                                if f in rel_owner and f not in pool_v:
                                    gi = rel_owner[f]
                                    if caps[gi] == 0:
                                        ok = False
                                        break
                                    caps[gi] -= 1
                            if not ok:
                                continue
                            fills = [(_POOL, f) for f in chosen_nat]
                            fills += [(_JOKER,)] * n_j
                            rec = {
                                "kind": SET,
                                "suit": None,
                                "start": None,
                                "value": v,
                                "fills": fills,
                                "designated": False,
                                "set_jokers": n_j,
                                "n_j": n_j,
                            }
                            new_rels = rels + [
                                (rel_groups[rel_owner[f]][0], f)
                                for f in chosen_nat
                                if f in rel_owner and f not in pool_v
                            ]
                            rec_fill(
                                r_left - length,
                                need_seq,
                                pure_due,
                                h - h_here - rel_host,
                                pj - (n_j - h_here) - rel_pool,
                                used_local | set(chosen_nat),
                                caps,
                                melds + [rec],
                                new_rels,
                                hosted + h_here + rel_host,
                            )
                            if best[0][0] >= ceiling:
                                return

    rec_fill(r, need_seqs, need_pure, host, pjl, set(), rel_cap0, [], [], 0)
    if best[0][0] < 0:
        return None
    return best[0]

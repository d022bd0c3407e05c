"""Exhaustive case checks behind the distance bounds.

``check_lemma1`` sweeps every 4-subset of values for a close pair.
``verify_3332`` enumerates the hand shapes with one duplicated value
whose leftovers spread 3-3-3-2 across the suits, in two flavours: the
``paper`` model works on a linear value line with abstract groups, the
``faithful`` model keeps suits, the dual-ended ace and the wildcard in
play and escalates unresolved cases to the exact solver.
``certify_extremal`` pins the known worst hand at distance seven.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from multiprocessing import Pool

from .cards import (
    PRINTED_JOKER,
    Card,
    Hand,
    JokerContext,
    Suit,
    parse_card,
    parse_hand,
    positions,
)
from .certificates import Certificate, verify_certificate
from .declare import Declaration
from .melds import Meld, gap
from .solver import min_dist


@dataclass(frozen=True)
class CaseReport:
    """Outcome of one exhaustive sweep.

    ``escalations`` counts cases that needed the exact solver after the
    cheap sufficient conditions failed; ``metrics`` carries sweep
    statistics that are not pass/fail material.
    """

    universe: str
    cases_enumerated: int
    cases_passed: int
    failures: tuple[str, ...] = ()
    escalations: int = 0
    metrics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.cases_passed + len(self.failures) != self.cases_enumerated:
            raise ValueError("passed and failed cases must partition the universe")

    @property
    def ok(self) -> bool:
        return not self.failures


def check_lemma1() -> CaseReport:
    """Any four values contain a pair at most two slots apart."""
    worst = 0
    total = 0
    failures = []
    for quad in combinations(range(1, 14), 4):
        total += 1
        best = min(gap(a, b) for a, b in combinations(quad, 2))
        worst = max(worst, best)
        if best > 2:
            failures.append(f"values={quad} min_gap={best}")
    return CaseReport(
        universe="4-subsets of the 13 card values",
        cases_enumerated=total,
        cases_passed=total - len(failures),
        failures=tuple(failures),
        metrics={"max_min_gap": worst},
    )


def _paper_3332() -> CaseReport:
    """Abstract model: twelve values on a line, no suits, no ace wrap.

    A case is a duplicated set value plus an ordered 3-3-3-2 split of
    the remaining eleven values.  It passes when at least two groups
    hold an internal pair no more than three slots apart.
    """
    values = tuple(range(1, 13))
    close2 = {p: p[1] - p[0] <= 4 for p in combinations(values, 2)}
    close3 = {
        t: any(b - a <= 4 for a, b in combinations(t, 2))
        for t in combinations(values, 3)
    }
    total = passed = 0
    failures = []
    for v in values:
        rem = tuple(u for u in values if u != v)
        for two in combinations(rem, 2):
            rem9 = tuple(u for u in rem if u not in two)
            c_two = close2[two]
            for g1 in combinations(rem9, 3):
                rem6 = tuple(u for u in rem9 if u not in g1)
                c_one = close3[g1] + c_two
                for g2 in combinations(rem6, 3):
                    g3 = tuple(u for u in rem6 if u not in g2)
                    total += 1
                    if c_one + close3[g2] + close3[g3] >= 2:
                        passed += 1
                    else:
                        failures.append(f"set={v} two={two} groups={g1}|{g2}|{g3}")
    return CaseReport(
        universe="duplicated value x ordered 3-3-3-2 split of the other "
        "eleven values, linear positions",
        cases_enumerated=total,
        cases_passed=passed,
        failures=tuple(failures),
        metrics={"model": "paper"},
    )


def _max_window(values_subset) -> int:
    """Most cards of one suit holding these values that fit a 5-span."""
    pos = [positions(u) for u in values_subset]
    return max(
        sum(1 for ps in pos if any(start <= p <= start + 4 for p in ps))
        for start in range(1, 11)
    )


# Window statistics for every possible group, built once per process.
_MW: dict[tuple[int, ...], int] = {}


def _mw(group: tuple[int, ...]) -> int:
    table = _MW
    if not table:
        for t in combinations(range(1, 14), 2):
            table[t] = _max_window(t)
        for t in combinations(range(1, 14), 3):
            table[t] = _max_window(t)
    return table[group]


_GROUP_SUITS = (Suit.HEARTS, Suit.CLUBS, Suit.DIAMONDS, Suit.SPADES)


def _concrete_hand(v: int, groups, placement) -> Hand:
    """Lay the abstract case onto suits: group i becomes suit i, and the
    duplicated value lands in the two placement suits."""
    cards = [
        Card(suit, u) for suit, grp in zip(_GROUP_SUITS, groups) for u in grp
    ]
    cards.extend(Card(_GROUP_SUITS[i], v) for i in placement)
    return Hand(cards)


def _escalate(w: int, v: int, groups, placement) -> int:
    """Exact worst distance over the four wildcard suits."""
    hand = _concrete_hand(v, groups, placement)
    worst = 0
    for suit in Suit:
        ctx = JokerContext(Card(suit, w))
        worst = max(worst, min_dist(hand, ctx, at_most=7).value)
    return worst


def _faithful_chunk(task: tuple[int, int]) -> tuple[int, int, int, list[str]]:
    """All cases for one (wildcard value, duplicated value) pair.

    Per partition the cheap sufficient conditions run first: two groups
    with an in-window pair always reach distance 7 (two short runs plus
    the banked set), and so does a window of three plus any second kept
    card, since parking a duplicate inside a window exactly offsets its
    banked copy.  Only partitions failing both go to the solver, once
    per placement of the duplicate pair and wildcard suit.
    """
    w, v = task
    universe = tuple(u for u in range(1, 14) if u != w and u != v)
    placements = tuple(combinations(range(4), 2))
    total = passed = escalations = 0
    failures: list[str] = []
    for two in combinations(universe, 2):
        rem9 = tuple(u for u in universe if u not in two)
        mw_two = _mw(two)
        anchor = rem9[0]
        for pair1 in combinations(rem9[1:], 2):
            g1 = (anchor,) + pair1
            rem6 = tuple(u for u in rem9[1:] if u not in pair1)
            head = rem6[0]
            mw1 = _mw(g1)
            for pair2 in combinations(rem6[1:], 2):
                g2 = (head,) + pair2
                g3 = tuple(u for u in rem6[1:] if u not in pair2)
                total += 6
                mws = (mw1, _mw(g2), _mw(g3), mw_two)
                n_close = sum(m >= 2 for m in mws)
                if n_close >= 2:
                    passed += 6
                    continue
                top1 = max(mws)
                top2 = sorted(mws)[-2]
                if top1 + top2 >= 4:
                    passed += 6
                    continue
                groups = (g1, g2, g3, two)
                for placement in placements:
                    escalations += 1
                    worst = _escalate(w, v, groups, placement)
                    if worst <= 7:
                        passed += 1
                    else:
                        failures.append(
                            f"w={w} v={v} groups={g1}|{g2}|{g3} two={two} "
                            f"placement={placement} dist={worst}"
                        )
    return total, passed, escalations, failures


def _faithful_3332(workers: int = 1) -> CaseReport:
    tasks = [(w, v) for w in range(1, 14) for v in range(1, 14) if v != w]
    if workers > 1:
        with Pool(workers) as pool:
            results = pool.map(_faithful_chunk, tasks)
    else:
        results = [_faithful_chunk(t) for t in tasks]
    total = passed = escalations = 0
    failures: list[str] = []
    for t, p, e, f in results:
        total += t
        passed += p
        escalations += e
        failures.extend(f)
    return CaseReport(
        universe="wildcard value x duplicated value x unordered 3-3-3-2 "
        "split x duplicate placement, suits and dual-ended ace in play",
        cases_enumerated=total,
        cases_passed=passed,
        failures=tuple(failures),
        escalations=escalations,
        metrics={"model": "faithful", "workers": workers},
    )


def verify_3332(model: str = "paper", workers: int = 1) -> CaseReport:
    """Sweep the 3-3-3-2 case analysis in the chosen model."""
    if model == "paper":
        return _paper_3332()
    if model == "faithful":
        return _faithful_3332(workers)
    raise ValueError(f"unknown model {model!r}; expected 'paper' or 'faithful'")


# The hand needing the full seven replacements, with ace of hearts face up.
EXTREMAL_HAND = parse_hand("2H 3C 4S 5D 6H 7C 8S 9D 10H JC QS KS KD")
EXTREMAL_WCJ = parse_card("AH")
EXTREMAL_DISTANCE = 7


def extremal_witness() -> Declaration:
    """The known-optimal rebuild: two runs of five plus a king set."""
    return Declaration(
        (
            Meld.sequence(
                Suit.HEARTS, 2, tuple(Card(Suit.HEARTS, u) for u in range(2, 7))
            ),
            Meld.sequence(
                Suit.CLUBS, 3, tuple(Card(Suit.CLUBS, u) for u in range(3, 8))
            ),
            Meld.set_of(
                13, (Card(Suit.DIAMONDS, 13), Card(Suit.SPADES, 13), PRINTED_JOKER)
            ),
        )
    )


def certify_extremal() -> CaseReport:
    """Pin the worst hand: the solver says 7 and the published-style
    rebuild is a valid certificate at exactly 7."""
    ctx = JokerContext(EXTREMAL_WCJ)
    failures = []
    res = min_dist(EXTREMAL_HAND, ctx)
    if res.value != EXTREMAL_DISTANCE:
        failures.append(f"solver-minimum={res.value} expected={EXTREMAL_DISTANCE}")
    witness = extremal_witness()
    target = Hand([c for m in witness.melds for c in m.cards])
    cert = Certificate("prop3", target, witness, EXTREMAL_DISTANCE)
    reasons = verify_certificate(EXTREMAL_HAND, cert, ctx)
    if reasons:
        failures.append("witness-certificate:" + ",".join(reasons))
    return CaseReport(
        universe="the extremal hand: solver minimum and witness certificate",
        cases_enumerated=2,
        cases_passed=2 - len(failures),
        failures=tuple(failures),
        metrics={"min_dist": res.value, "kept": 13 - cert.claimed_distance},
    )


def permute_suits(hand: Hand, ctx: JokerContext, perm) -> tuple[Hand, JokerContext]:
    """Relabel suits everywhere, face-up wildcard included."""

    def move(c: Card) -> Card:
        return c if c.is_printed_joker else Card(perm[c.suit], c.value)

    return (
        Hand([move(c) for c in hand], printed_jokers=ctx.printed_jokers),
        JokerContext(move(ctx.wildcard), ctx.printed_jokers),
    )


def mirror_values(hand: Hand, ctx: JokerContext) -> tuple[Hand, JokerContext]:
    """Reflect the value line (2 and K swap); the dual-ended ace is fixed."""

    def move(c: Card) -> Card:
        if c.is_printed_joker or c.value == 1:
            return c
        return Card(c.suit, 15 - c.value)

    return (
        Hand([move(c) for c in hand], printed_jokers=ctx.printed_jokers),
        JokerContext(move(ctx.wildcard), ctx.printed_jokers),
    )

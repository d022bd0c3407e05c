"""Acceptance suite: one test per shipping criterion, time budgets pinned.

Each test states its claim, its tolerance, and its wall-clock budget up
front. Budgets are asserted, not advisory. Criterion 3 checks the linear
four-group model and is expected to fail: the enumeration finds splits
with no second close pair, and the count of those splits is part of the
recorded behaviour (see the faithful model in criterion 4 for the check
that does hold on real card values).
"""

import time

import numpy as np

from mindist.cards import Card, Hand, JokerContext, Suit, parse_card, parse_hand
from mindist.certificates import (
    BOUND_LIMITS,
    construct_prop1,
    construct_prop2,
    construct_prop3,
    verify_certificate,
)
from mindist.declare import is_declarable
from mindist.melds import seq_face
from mindist.montecarlo import DEFAULT_SEED, sample_distribution, sample_hand
from mindist.oracle import milp_min_dist
from mindist.solver import min_dist
from mindist.verifiers import (
    EXTREMAL_DISTANCE,
    EXTREMAL_HAND,
    EXTREMAL_WCJ,
    certify_extremal,
    check_lemma1,
    mirror_values,
    permute_suits,
    verify_3332,
)


def test_criterion_1_extremal_hand_needs_exactly_seven():
    """The published worst-case hand sits at distance exactly 7. Budget 60s."""
    t0 = time.perf_counter()
    report = certify_extremal()
    elapsed = time.perf_counter() - t0
    assert report.ok, report.failures
    assert report.cases_enumerated == 2
    assert report.metrics["min_dist"] == EXTREMAL_DISTANCE == 7
    res = min_dist(EXTREMAL_HAND, JokerContext(EXTREMAL_WCJ))
    assert res.value == 7
    assert elapsed < 60, f"took {elapsed:.1f}s, budget 60s"


def test_criterion_2_every_value_quadruple_has_a_close_pair():
    """All 715 four-value subsets contain a pair within gap 2; the bound is
    tight (max of the minima is exactly 2). Budget 1s."""
    t0 = time.perf_counter()
    report = check_lemma1()
    elapsed = time.perf_counter() - t0
    assert report.cases_enumerated == 715
    assert report.ok, report.failures[:5]
    assert report.metrics["max_min_gap"] == 2
    assert elapsed < 1, f"took {elapsed:.2f}s, budget 1s"


def test_criterion_3_four_group_split_linear_model():
    """Claim under test: every 3-3-3-2 split of twelve linear values keeps
    close pairs in at least two groups. Enumerates all 1,108,800 ordered
    splits. Budget 120s.

    Known red: the claim is false as stated. 144 splits, all built from
    the two stride-five triples (1,6,11) and (2,7,12), have a close pair
    in one group only. The assertion is kept exact so the failure stays
    visible; criterion 4 checks the corrected, card-faithful model.
    """
    t0 = time.perf_counter()
    report = verify_3332(model="paper")
    elapsed = time.perf_counter() - t0
    assert report.cases_enumerated == 1_108_800
    assert elapsed < 120, f"took {elapsed:.1f}s, budget 120s"
    assert report.ok, (
        f"{len(report.failures)} of {report.cases_enumerated} splits have no "
        f"second close pair, first: {report.failures[0]}"
    )


def test_criterion_4_four_group_split_faithful_model():
    """Faithful restatement over card values: for every wildcard value, every
    duplicated value, and every 3-3-3-2 split of the remaining values into
    suits, the duplicate-set hand stays within distance 7. 14,414,400 cases,
    solver escalation allowed, zero failures. Budget 900s."""
    t0 = time.perf_counter()
    report = verify_3332(model="faithful", workers=2)
    elapsed = time.perf_counter() - t0
    assert report.cases_enumerated == 14_414_400
    assert report.ok, f"{len(report.failures)} failures, first: {report.failures[:3]}"
    assert report.cases_passed == 14_414_400
    assert elapsed < 900, f"took {elapsed:.1f}s, budget 900s"


def test_criterion_5_certificates_hold_on_ten_thousand_hands():
    """On 10,000 seeded hands every constructed certificate verifies, claims
    stay within 9/8/7, and the true minimum never exceeds any claim (so in
    particular distance <= 7 throughout). Budget 600s."""
    t0 = time.perf_counter()
    builders = (
        (construct_prop1, "prop1"),
        (construct_prop2, "prop2"),
        (construct_prop3, "prop3"),
    )
    for i in range(10_000):
        hand, ctx = sample_hand(DEFAULT_SEED, i)
        claims = []
        for build, source in builders:
            cert = build(hand, ctx)
            assert cert.bound_source == source, (i, source)
            assert verify_certificate(hand, cert, ctx) == (), (i, source)
            assert cert.claimed_distance <= BOUND_LIMITS[source], (i, source)
            claims.append(cert.claimed_distance)
        cap = min(claims)
        res = min_dist(hand, ctx, at_most=cap)
        # exceeding the cap means the search exhausted: the value is exact
        assert res.value <= cap, (
            f"hand {i}: minimum {res.value} exceeds tightest claim {cap}"
        )
    elapsed = time.perf_counter() - t0
    assert elapsed < 600, f"took {elapsed:.1f}s, budget 600s"


EDGE_HANDS = [
    ("2H 3C 4S 5D 6H 7C 8S 9D 10H JC QS KS KD", "AH"),
    ("2H 3H 4H 5C 6C 7C 9D 10D JD KH KC KS KD", "8D"),
    ("JK 8H 8C 8S 2H 3H 4H 9D JD KD 5C AC QS", "8D"),
    ("AH 2H 3H 4H 5H 6H 7H 8H 9H 10H JH QH KH", "5S"),
    ("2H 3H 4H 5C 6C 7C 9D 10D JD QS KS AS 8H", "8D"),
    ("AH AC AD AS 2H 3H 4H 7C 8C 9C JD QD KD", "5S"),
    ("2H 5H 8H JH 3C 6C 9C QC 4D 7D 10D KD AS", "AC"),
    ("JK 7H 7C 2H 3H 4H 9D 10D JD QS KS AS 5C", "7S"),
    ("AH 2H 3H 4H 5H 6H 7H 8H 9H 10H JH QH JK", "3S"),
    ("9H 9C 9D 9S JH JC JD JS 2H 4C 6D 8S KH", "5D"),
    ("KH KC KD KS QH QC QD QS JH JC JD JS 10H", "2C"),
    ("AH 2H 3H AC 2C 3C AD 2D 3D AS 2S 3S 4H", "10S"),
    ("6H 6C 6D 2H 3H 4H 8C 9C 10C QD KD AD JK", "6S"),
    ("6H 7H 8H 6C 7C 8C 6D 7D 8D 6S 7S 8S 9H", "AS"),
    ("AH 3H 5H 7H 9H JH KH 2C 4C 6C 8C 10C QC", "5D"),
    ("2H 6H 10H 3C 7C JC 4D 8D QD 5S 9S KS JK", "AD"),
    ("2H 2C 5H 5C 8H 8C JH JC 3D 6D 9D QD KS", "4S"),
    ("AH 2S 3H 4S 5H 6S 7H 8S 9H 10S JH QS KH", "7D"),
    ("QH KH AH QC KC AC QD KD AD JS 5S 9S 2C", "7S"),
    ("2H 3C 4S 5D 6H 7C 8S 9D 10H JC QS KS KH", "AD"),
]


def test_criterion_6_integer_program_matches_search():
    """The independent integer-programming oracle returns the same minimum as
    the branch-and-bound search on 200 seeded hands plus 20 crafted edge
    hands. Exact equality, no tolerance. Budget 600s."""
    t0 = time.perf_counter()
    pairs = [(parse_hand(h), JokerContext(parse_card(w))) for h, w in EDGE_HANDS]
    pairs += [sample_hand(DEFAULT_SEED, i) for i in range(200)]
    for k, (hand, ctx) in enumerate(pairs):
        res = min_dist(hand, ctx)
        milp_value, _ = milp_min_dist(hand, ctx)
        assert milp_value == res.value, f"case {k}: milp {milp_value} != {res.value}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 600, f"took {elapsed:.1f}s, budget 600s"


DECLARABLE_PARTS = (
    ((4, "seq"), (3, "seq"), (3, "seq"), (3, "set")),
    ((4, "seq"), (3, "seq"), (3, "set"), (3, "set")),
    ((5, "seq"), (5, "seq"), (3, "seq")),
    ((5, "seq"), (4, "seq"), (4, "set")),
    ((6, "seq"), (4, "seq"), (3, "set")),
    ((7, "seq"), (3, "seq"), (3, "seq")),
    ((4, "seq"), (4, "seq"), (5, "seq")),
    ((3, "seq"), (3, "seq"), (3, "seq"), (4, "set")),
)


def declarable_hand(index):
    """Meld-by-meld construction: pure runs and natural sets, wildcard value
    chosen outside the hand so nothing depends on joker placement."""
    rng = np.random.default_rng(np.random.SeedSequence(88, spawn_key=(index,)))
    while True:
        parts = DECLARABLE_PARTS[int(rng.integers(0, len(DECLARABLE_PARTS)))]
        used: set[Card] = set()
        ok = True
        for size, kind in parts:
            for _ in range(40):
                if kind == "seq":
                    suit = Suit(int(rng.integers(0, 4)))
                    start = int(rng.integers(1, 16 - size))
                    cards = [seq_face(suit, p) for p in range(start, start + size)]
                else:
                    value = int(rng.integers(1, 14))
                    suits = rng.permutation(4)[:size]
                    cards = [Card(Suit(int(s)), value) for s in suits]
                if not (set(cards) & used):
                    used.update(cards)
                    break
            else:
                ok = False
                break
        if not ok:
            continue
        free_values = [v for v in range(1, 14) if all(c.value != v for c in used)]
        if not free_values:
            continue
        wcj = Card(
            Suit(int(rng.integers(0, 4))),
            free_values[int(rng.integers(0, len(free_values)))],
        )
        return Hand(sorted(used, key=lambda c: (c.suit, c.value))), JokerContext(wcj)


SPACED_GROUPS = ((1, 4, 7, 10), (2, 5, 8, 11), (3, 6, 9, 12), (13,))


def spaced_hand(index):
    """Thirteen distinct values with same-suit positions at least three apart
    under either ace position, so no meld of any kind can form."""
    rng = np.random.default_rng(np.random.SeedSequence(77, spawn_key=(index,)))
    suits = [Suit(int(s)) for s in rng.permutation(4)]
    cards = [Card(suit, v) for suit, grp in zip(suits, SPACED_GROUPS) for v in grp]
    wcj_value = int(rng.integers(1, 14))
    holder = next(c.suit for c in cards if c.value == wcj_value)
    wcj_suit = Suit((holder + 1 + int(rng.integers(0, 3))) % 4)
    return Hand(cards), JokerContext(Card(wcj_suit, wcj_value))


def test_criterion_7_declarable_iff_distance_zero():
    """100 constructed declarable hands and 100 structurally meld-free hands:
    the declarability check and a zero minimum agree in both directions.
    Budget 120s."""
    t0 = time.perf_counter()
    for i in range(100):
        hand, ctx = declarable_hand(i)
        assert is_declarable(hand, ctx), f"declarable hand {i}"
        assert min_dist(hand, ctx, at_most=0).value == 0, f"declarable hand {i}"
    for i in range(100):
        hand, ctx = spaced_hand(i)
        assert not is_declarable(hand, ctx), f"spaced hand {i}"
        # a cap of zero that comes back positive means the search exhausted
        assert min_dist(hand, ctx, at_most=0).value > 0, f"spaced hand {i}"
    elapsed = time.perf_counter() - t0
    assert elapsed < 120, f"took {elapsed:.1f}s, budget 120s"


def test_criterion_8_distance_is_symmetry_invariant():
    """Relabeling suits or mirroring values (2<->K, ace fixed) never changes
    the minimum on 500 seeded hands. Budget 300s."""
    t0 = time.perf_counter()
    for i in range(500):
        hand, ctx = sample_hand(DEFAULT_SEED, i)
        base = min_dist(hand, ctx).value

        rng = np.random.default_rng(np.random.SeedSequence(99, spawn_key=(i,)))
        order = rng.permutation(4)
        while all(int(s) == k for k, s in enumerate(order)):
            order = rng.permutation(4)
        perm = {Suit(k): Suit(int(s)) for k, s in enumerate(order)}
        p_hand, p_ctx = permute_suits(hand, ctx, perm)
        assert min_dist(p_hand, p_ctx).value == base, f"hand {i} under {perm}"

        m_hand, m_ctx = mirror_values(hand, ctx)
        assert min_dist(m_hand, m_ctx).value == base, f"hand {i} mirrored"
    elapsed = time.perf_counter() - t0
    assert elapsed < 300, f"took {elapsed:.1f}s, budget 300s"


def test_criterion_9_distance_distribution_over_ten_thousand_hands():
    """Seeded 10,000-hand sample: at least 70% of mass on distances 2..4 and
    nothing above 7. Budget 600s."""
    t0 = time.perf_counter()
    report = sample_distribution(10_000, seed=DEFAULT_SEED)
    elapsed = time.perf_counter() - t0
    assert report.sample_size == 10_000
    assert report.mass_2_to_4 >= 0.70, f"mass {report.mass_2_to_4:.3f}"
    assert report.max_observed <= 7, f"max {report.max_observed}"
    assert sum(report.histogram.values()) == 10_000
    assert elapsed < 600, f"took {elapsed:.1f}s, budget 600s"

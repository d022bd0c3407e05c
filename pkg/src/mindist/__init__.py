"""Declarability distance for 13-card rummy hands with a wildcard joker.

The central quantity is the minimum number of replacements turning a
hand into one that can be validly declared (partitioned into melds with
at least two sequences, one of them pure), drawing replacements from
the rest of a single deck.
"""

from .cards import (
    HAND_SIZE,
    PRINTED_JOKER,
    PRINTED_JOKER_COUNT,
    Card,
    Hand,
    JokerContext,
    Suit,
    parse_card,
    parse_hand,
    positions,
)
from .certificates import (
    BOUND_LIMITS,
    Certificate,
    construct_prop1,
    construct_prop2,
    construct_prop3,
    verify_certificate,
)
from .declare import Declaration, is_declarable, validate_declaration
from .melds import Meld, enumerate_melds, gap, is_pure_sequence, validate_meld
from .montecarlo import (
    DEFAULT_SEED,
    DistributionReport,
    sample_distribution,
    sample_hand,
    write_histogram_csv,
)
from .solver import MinDistResult, distance, min_dist
from .verifiers import (
    CaseReport,
    certify_extremal,
    check_lemma1,
    mirror_values,
    permute_suits,
    verify_3332,
)

__version__ = "0.1.0"

__all__ = [
    "HAND_SIZE",
    "PRINTED_JOKER",
    "PRINTED_JOKER_COUNT",
    "Card",
    "Hand",
    "JokerContext",
    "Suit",
    "parse_card",
    "parse_hand",
    "positions",
    "Declaration",
    "is_declarable",
    "validate_declaration",
    "Meld",
    "enumerate_melds",
    "gap",
    "is_pure_sequence",
    "validate_meld",
    "MinDistResult",
    "distance",
    "min_dist",
    "BOUND_LIMITS",
    "Certificate",
    "construct_prop1",
    "construct_prop2",
    "construct_prop3",
    "verify_certificate",
    "CaseReport",
    "certify_extremal",
    "check_lemma1",
    "mirror_values",
    "permute_suits",
    "verify_3332",
    "DEFAULT_SEED",
    "DistributionReport",
    "sample_distribution",
    "sample_hand",
    "write_histogram_csv",
    "__version__",
]

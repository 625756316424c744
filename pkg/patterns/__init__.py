from .pattern import MatchSpan, Pattern, Slot, describe, load_patterns, save_patterns
from .matching import find_spans, first_span, matches, sample_phrases
from .specificity import more_specific_or_equal, strictly_more_specific
from .miner import MinerConfig, mine_patterns

__all__ = [
    "MatchSpan",
    "Pattern",
    "Slot",
    "describe",
    "load_patterns",
    "save_patterns",
    "find_spans",
    "first_span",
    "matches",
    "sample_phrases",
    "more_specific_or_equal",
    "strictly_more_specific",
    "MinerConfig",
    "mine_patterns",
]

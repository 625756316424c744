"""Greedy beam miner for sequential attribute patterns.

A deterministic stand-in for dedicated pattern-mining tools: candidates start
as single-attribute patterns over the most frequent attributes and are grown one
step at a time (append a slot, or add an attribute to an existing slot). At every
round the best remaining candidate by information gain is selected and expanded.
Pattern files written by other miners can be used in its place.
"""
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from corpus.types import Attribute, Dataset, Document
from utils.helpers import DEFAULT_SEED, ConfigError

from .matching import matches
from .pattern import Pattern, Slot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MinerConfig:
    alphabet_size: int = 50
    gap_budget: int = 2
    max_slots: int = 3
    max_attrs_per_pattern: int = 3
    num_patterns: int = 50
    seed: int = DEFAULT_SEED
    beam_width: int = 30
    min_support: int = 2
    max_documents: Optional[int] = None

    def validate(self) -> None:
        positives = {
            "alphabet_size": self.alphabet_size,
            "max_slots": self.max_slots,
            "max_attrs_per_pattern": self.max_attrs_per_pattern,
            "beam_width": self.beam_width,
            "min_support": self.min_support,
        }
        for name, value in positives.items():
            if value < 1:
                raise ConfigError(f"{name} must be at least 1, got {value}")
        if self.gap_budget < 0:
            raise ConfigError(f"gap_budget must be non-negative, got {self.gap_budget}")
        if self.num_patterns < 0:
            raise ConfigError(f"num_patterns must be non-negative, got {self.num_patterns}")
        if self.max_documents is not None and self.max_documents < 2:
            raise ConfigError("max_documents must be at least 2 when given")


@dataclass(frozen=True)
class _Candidate:
    gain: float
    code: str
    pattern: Pattern
    matched: Tuple[int, ...]

    @property
    def rank_key(self) -> Tuple[float, str]:
        return (-self.gain, self.code)


def entropy(positives: int, total: int) -> float:
    if total == 0 or positives == 0 or positives == total:
        return 0.0
    p = positives / total
    return -(p * math.log2(p) + (1 - p) * math.log2(1 - p))


def information_gain(matched_pos: int, matched_total: int, all_pos: int, all_total: int) -> float:
    """Gain of splitting the documents by match / non-match against their labels."""
    rest_pos = all_pos - matched_pos
    rest_total = all_total - matched_total
    conditional = (matched_total / all_total) * entropy(matched_pos, matched_total)
    conditional += (rest_total / all_total) * entropy(rest_pos, rest_total)
    return entropy(all_pos, all_total) - conditional


class PatternMiner:
    def __init__(self, config: MinerConfig):
        config.validate()
        self.config = config

    def mine(self, data: Dataset) -> List[Pattern]:
        if self.config.num_patterns == 0:
            return []
        data.require_both_classes()

        docs = self._sample(list(data))
        self._docs = docs
        self._labels = [d.label for d in docs]
        self._doc_attrs: List[FrozenSet[Attribute]] = [d.attribute_set() for d in docs]
        self._all_pos = sum(self._labels)
        self.alphabet = self._build_alphabet()
        logger.info(
            "Mining up to %d pattern(s) from %d document(s), alphabet of %d attribute(s)",
            self.config.num_patterns, len(docs), len(self.alphabet),
        )

        seen = set()
        pool: Dict[str, _Candidate] = {}
        for attr in self.alphabet:
            pattern = Pattern((Slot(frozenset([attr])),), self.config.gap_budget)
            seen.add(pattern.encode())
            cand = self._score(pattern, range(len(docs)))
            if cand is not None:
                pool[cand.code] = cand

        selected: List[Pattern] = []
        while len(selected) < self.config.num_patterns and pool:
            best = min(pool.values(), key=lambda c: c.rank_key)
            del pool[best.code]
            selected.append(best.pattern)
            logger.debug("Selected %s (gain %.4f, support %d)", best.code, best.gain, len(best.matched))

            for child in self._augment(best.pattern):
                code = child.encode()
                if code in seen:
                    continue
                seen.add(code)
                cand = self._score(child, best.matched)
                # a specialization matching exactly the same documents adds nothing
                if cand is not None and cand.matched != best.matched:
                    pool[code] = cand
            if len(pool) > self.config.beam_width:
                kept = sorted(pool.values(), key=lambda c: c.rank_key)[: self.config.beam_width]
                pool = {c.code: c for c in kept}

        logger.info("Mined %d pattern(s)", len(selected))
        return selected

    def _sample(self, docs: List[Document]) -> List[Document]:
        limit = self.config.max_documents
        if limit is None or len(docs) <= limit:
            return docs
        rng = random.Random(self.config.seed)
        keep = sorted(rng.sample(range(len(docs)), limit))
        return [docs[i] for i in keep]

    def _build_alphabet(self) -> List[Attribute]:
        freq = Counter()
        for attrs in self._doc_attrs:
            freq.update(attrs)
        ranked = sorted(freq, key=lambda a: (-freq[a], a.encode()))
        return ranked[: self.config.alphabet_size]

    def _score(self, pattern: Pattern, candidates: Sequence[int]) -> Optional[_Candidate]:
        needed = pattern.attribute_set()
        matched = tuple(
            i for i in candidates
            if needed <= self._doc_attrs[i] and matches(pattern, self._docs[i])
        )
        total = len(self._docs)
        if len(matched) < self.config.min_support or len(matched) == total:
            return None
        matched_pos = sum(self._labels[i] for i in matched)
        gain = information_gain(matched_pos, len(matched), self._all_pos, total)
        return _Candidate(gain, pattern.encode(), pattern, matched)

    def _augment(self, pattern: Pattern) -> List[Pattern]:
        if pattern.attribute_count >= self.config.max_attrs_per_pattern:
            return []
        children = []
        if len(pattern.slots) < self.config.max_slots:
            for attr in self.alphabet:
                slots = pattern.slots + (Slot(frozenset([attr])),)
                children.append(Pattern(slots, pattern.gap_budget))
        for k, slot in enumerate(pattern.slots):
            for attr in self.alphabet:
                if attr in slot.attributes:
                    continue
                slots = list(pattern.slots)
                slots[k] = Slot(slot.attributes | {attr})
                children.append(Pattern(tuple(slots), pattern.gap_budget))
        return children


def mine_patterns(data: Dataset, config: MinerConfig) -> List[Pattern]:
    return PatternMiner(config).mine(data)

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple, Union

from corpus.types import TEXT_KIND, Attribute, Token
from utils.helpers import DataError, ModelFormatError, read_json, write_json

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Slot:
    """A conjunction of attributes; a token matches when it carries all of them."""
    attributes: FrozenSet[Attribute]

    def __post_init__(self):
        object.__setattr__(self, "attributes", frozenset(self.attributes))
        if not self.attributes:
            raise DataError("a pattern slot needs at least one attribute")

    def matches(self, token: Token) -> bool:
        return self.attributes <= token.attributes

    def sorted_attributes(self) -> List[Attribute]:
        return sorted(self.attributes, key=lambda a: a.encode())

    def encode(self) -> str:
        return "&".join(a.encode() for a in self.sorted_attributes())


@dataclass(frozen=True)
class Pattern:
    slots: Tuple[Slot, ...]
    gap_budget: int = 0

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(self.slots))
        if not self.slots:
            raise DataError("a pattern needs at least one slot")
        if isinstance(self.gap_budget, bool) or not isinstance(self.gap_budget, int) or self.gap_budget < 0:
            raise DataError(f"gap budget must be a non-negative integer, got {self.gap_budget!r}")

    @classmethod
    def of(cls, *slots: Sequence[str], gaps: int = 0) -> "Pattern":
        """Pattern.of(["TEXT:nothing"], ["SENTIMENT:pos"], gaps=2)"""
        return cls(tuple(Slot(frozenset(Attribute.parse(a) for a in slot)) for slot in slots), gaps)

    def __len__(self) -> int:
        return len(self.slots)

    @property
    def attribute_count(self) -> int:
        return sum(len(s.attributes) for s in self.slots)

    def attribute_set(self) -> FrozenSet[Attribute]:
        attrs = set()
        for slot in self.slots:
            attrs |= slot.attributes
        return frozenset(attrs)

    def encode(self) -> str:
        return "[" + ",".join(s.encode() for s in self.slots) + f"]|g={self.gap_budget}"

    def __str__(self) -> str:
        return self.encode()

    def to_dict(self) -> Dict:
        return {
            "slots": [[a.encode() for a in s.sorted_attributes()] for s in self.slots],
            "gaps": self.gap_budget,
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "Pattern":
        if not isinstance(payload, dict):
            raise ModelFormatError("pattern entry must be an object with 'slots' and 'gaps'")
        slots = payload.get("slots")
        gaps = payload.get("gaps", 0)
        if not isinstance(slots, list) or not all(isinstance(s, list) for s in slots):
            raise ModelFormatError("pattern 'slots' must be an array of arrays of KIND:value strings")
        try:
            return cls.of(*slots, gaps=gaps)
        except DataError as e:
            raise ModelFormatError(f"invalid pattern {payload!r}: {e}") from e


@dataclass(frozen=True)
class MatchSpan:
    """Token indices, one per pattern slot, strictly increasing."""
    token_indices: Tuple[int, ...]

    @property
    def first(self) -> int:
        return self.token_indices[0]

    @property
    def last(self) -> int:
        return self.token_indices[-1]

    def covers(self, index: int) -> bool:
        return index in self.token_indices


def describe(pattern: Pattern) -> str:
    """A readable gloss of the pattern, e.g. 'nothing' then a SENTIMENT:pos word within 2 words."""
    parts = [_describe_slot(s) for s in pattern.slots]
    if len(parts) == 1:
        return parts[0]
    if pattern.gap_budget == 0:
        joiner = " immediately followed by "
    else:
        word = "word" if pattern.gap_budget == 1 else "words"
        joiner = f" followed within {pattern.gap_budget} {word} by "
    return joiner.join(parts)


def _describe_slot(slot: Slot) -> str:
    texts = [a.value for a in slot.sorted_attributes() if a.kind == TEXT_KIND]
    others = [a.encode() for a in slot.sorted_attributes() if a.kind != TEXT_KIND]
    if texts and not others:
        return " / ".join(f"'{t}'" for t in texts)
    if texts:
        return f"'{texts[0]}' with " + " and ".join(others)
    return "a word with " + " and ".join(others)


def check_unique(patterns: Iterable[Pattern]) -> None:
    seen = set()
    for p in patterns:
        code = p.encode()
        if code in seen:
            raise ModelFormatError(f"duplicate pattern {code}")
        seen.add(code)


def load_patterns(path: Union[str, Path]) -> List[Pattern]:
    payload = read_json(path)
    if not isinstance(payload, list):
        raise ModelFormatError(f"{path}: pattern file must be a JSON array")
    patterns = [Pattern.from_dict(entry) for entry in payload]
    check_unique(patterns)
    logger.info("Loaded %d pattern(s) from %s", len(patterns), path)
    return patterns


def save_patterns(patterns: Iterable[Pattern], path: Union[str, Path]) -> None:
    payload = [p.to_dict() for p in patterns]
    write_json(path, payload)
    logger.info("Saved %d pattern(s) to %s", len(payload), path)

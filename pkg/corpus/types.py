from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Iterator, List, Optional, Tuple

from utils.helpers import DataError

TEXT_KIND = "TEXT"


@dataclass(frozen=True, order=True)
class Attribute:
    """A `KIND:value` pair attached to a token."""
    kind: str
    value: str

    def __post_init__(self):
        if not self.kind or not self.value:
            raise DataError(f"attribute kind and value must be non-empty, got {self.kind!r}:{self.value!r}")

    def encode(self) -> str:
        return f"{self.kind}:{self.value}"

    @classmethod
    def parse(cls, text: str) -> "Attribute":
        kind, sep, value = str(text).partition(":")
        if not sep:
            raise DataError(f"attribute must look like KIND:value, got {text!r}")
        return cls(kind.strip(), value.strip())

    def __str__(self) -> str:
        return self.encode()


def text_attribute(surface: str) -> Attribute:
    return Attribute(TEXT_KIND, surface.lower())


@dataclass(frozen=True)
class Token:
    surface: str
    attributes: FrozenSet[Attribute] = frozenset()

    def __post_init__(self):
        if not self.surface:
            raise DataError("token surface must be non-empty")
        # exactly one TEXT attribute, always derived from the surface
        attrs = {a for a in self.attributes if a.kind != TEXT_KIND}
        attrs.add(text_attribute(self.surface))
        object.__setattr__(self, "attributes", frozenset(attrs))

    @property
    def text(self) -> str:
        return self.surface.lower()

    def with_attributes(self, extra: Iterable[Attribute]) -> "Token":
        return Token(self.surface, self.attributes | frozenset(extra))


@dataclass(frozen=True)
class Document:
    id: str
    tokens: Tuple[Token, ...] = ()
    label: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.label is not None and self.label not in (0, 1):
            raise DataError(f"document {self.id!r}: label must be 0 or 1, got {self.label!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    @property
    def surfaces(self) -> List[str]:
        return [t.surface for t in self.tokens]

    def attribute_set(self) -> FrozenSet[Attribute]:
        """Union of all token attributes, used to skip hopeless pattern checks."""
        attrs = set()
        for token in self.tokens:
            attrs |= token.attributes
        return frozenset(attrs)

    def span_text(self, indices: Iterable[int]) -> str:
        return " ".join(self.tokens[i].surface for i in indices)


@dataclass(frozen=True)
class Dataset:
    documents: Tuple[Document, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "documents", tuple(self.documents))
        seen = set()
        for doc in self.documents:
            if doc.id in seen:
                raise DataError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    @property
    def is_labeled(self) -> bool:
        return all(d.label is not None for d in self.documents)

    @property
    def labels(self) -> List[int]:
        return [d.label for d in self.documents]

    @property
    def positives(self) -> List[Document]:
        return [d for d in self.documents if d.label == 1]

    @property
    def negatives(self) -> List[Document]:
        return [d for d in self.documents if d.label == 0]

    def require_labeled(self) -> None:
        missing = [d.id for d in self.documents if d.label is None]
        if missing:
            raise DataError(f"{len(missing)} document(s) have no label, e.g. {missing[0]!r}")

    def require_both_classes(self) -> None:
        self.require_labeled()
        if not self.positives or not self.negatives:
            raise DataError("dataset must contain documents of both classes")

    def get(self, doc_id: str) -> Document:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        raise DataError(f"no document with id {doc_id!r}")


@dataclass(frozen=True)
class Lexicon:
    """A flat word list emitting one attribute for every word it contains."""
    kind: str
    value: str
    entries: FrozenSet[str]

    def __post_init__(self):
        entries = frozenset(e.strip().lower() for e in self.entries if e.strip())
        if not entries:
            raise DataError(f"lexicon {self.kind}:{self.value} has no entries")
        object.__setattr__(self, "entries", entries)
        # validates kind/value
        Attribute(self.kind, self.value)

    @property
    def attribute(self) -> Attribute:
        return Attribute(self.kind, self.value)

    def contains(self, word: str) -> bool:
        return word.lower() in self.entries

"""Explanation value types shared by every explainer, with their JSON form."""
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from numbers import Real
from typing import Dict, List, Optional, Tuple, Union

from qbaf.export import format_score, parse_score
from utils.helpers import ModelFormatError


class Polarity(str, Enum):
    SUPPORTER = "supporter"
    ATTACKER = "attacker"


class Method(str, Enum):
    FLX = "flx"
    SHALLOW = "shallow"
    DEEP = "deep"


def _score_json(value: Real) -> Union[float, str]:
    # fractions keep their exact "p/q" form
    if isinstance(value, Fraction):
        return format_score(value)
    return float(value)


@dataclass(frozen=True)
class ExplanationItem:
    argument_id: str
    pattern: str
    description: str
    span: Tuple[int, ...]
    span_text: str
    strength: Real
    base_score: Real
    supported_class: int
    polarity: Polarity

    def to_dict(self) -> Dict:
        return {
            "argument": self.argument_id,
            "pattern": self.pattern,
            "description": self.description,
            "span": list(self.span),
            "span_text": self.span_text,
            "strength": _score_json(self.strength),
            "base_score": _score_json(self.base_score),
            "class": self.supported_class,
            "polarity": self.polarity.value,
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "ExplanationItem":
        try:
            return cls(
                str(payload["argument"]),
                str(payload["pattern"]),
                str(payload.get("description", "")),
                tuple(int(i) for i in payload.get("span", [])),
                str(payload.get("span_text", "")),
                parse_score(payload["strength"], "strength"),
                parse_score(payload["base_score"], "base_score"),
                int(payload["class"]),
                Polarity(payload["polarity"]),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"malformed explanation item {payload!r}: {e}") from e


@dataclass(frozen=True)
class DeepNode:
    item: ExplanationItem
    children: Tuple["DeepNode", ...] = ()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def to_dict(self) -> Dict:
        payload = self.item.to_dict()
        payload["children"] = [c.to_dict() for c in self.children]
        return payload

    @classmethod
    def from_dict(cls, payload: Dict) -> "DeepNode":
        children = payload.get("children", [])
        if not isinstance(children, list):
            raise ModelFormatError("deep node 'children' must be an array")
        return cls(ExplanationItem.from_dict(payload), tuple(cls.from_dict(c) for c in children))


@dataclass(frozen=True)
class Explanation:
    document_id: str
    tokens: Tuple[str, ...]
    predicted_class: int
    probability: float
    method: Method
    variant: Optional[str] = None
    items: Tuple[ExplanationItem, ...] = ()
    deep: Tuple[DeepNode, ...] = ()
    samples: Dict[str, List[str]] = field(default_factory=dict, compare=False)

    @property
    def supporters(self) -> List[ExplanationItem]:
        return [i for i in self.items if i.polarity is Polarity.SUPPORTER]

    @property
    def attackers(self) -> List[ExplanationItem]:
        return [i for i in self.items if i.polarity is Polarity.ATTACKER]

    def to_dict(self) -> Dict:
        payload = {
            "document": self.document_id,
            "tokens": list(self.tokens),
            "prediction": {"class": self.predicted_class, "probability": float(self.probability)},
            "method": self.method.value,
            "shallow": [i.to_dict() for i in self.items],
            "deep": [n.to_dict() for n in self.deep],
        }
        if self.variant is not None:
            payload["variant"] = self.variant
        if self.samples:
            payload["samples"] = {k: list(v) for k, v in sorted(self.samples.items())}
        return payload

    @classmethod
    def from_dict(cls, payload: Dict) -> "Explanation":
        if not isinstance(payload, dict):
            raise ModelFormatError("explanation must be a JSON object")
        try:
            prediction = payload["prediction"]
            return cls(
                str(payload["document"]),
                tuple(str(t) for t in payload.get("tokens", [])),
                int(prediction["class"]),
                float(prediction["probability"]),
                Method(payload["method"]),
                payload.get("variant"),
                tuple(ExplanationItem.from_dict(i) for i in payload.get("shallow", [])),
                tuple(DeepNode.from_dict(n) for n in payload.get("deep", [])),
                {k: list(v) for k, v in (payload.get("samples") or {}).items()},
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ModelFormatError(f"malformed explanation: {e}") from e


def explanation_to_dict(explanation: Explanation) -> Dict:
    return explanation.to_dict()


def explanation_from_dict(payload: Dict) -> Explanation:
    return Explanation.from_dict(payload)

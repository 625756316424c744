import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from corpus.types import Document
from patterns.matching import matches
from patterns.pattern import Pattern, check_unique
from utils.helpers import DataError, ModelFormatError, format_real, parse_real, read_json, write_json

logger = logging.getLogger(__name__)

FeatureVector = Tuple[int, ...]


def sigmoid(z: float) -> float:
    """Logistic function, evaluated on the side that cannot overflow."""
    z = float(z)
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def predicted_class(probability: float) -> int:
    # P(y=1|x) >= 0.5 predicts class 1
    return 1 if probability >= 0.5 else 0


@dataclass(frozen=True)
class PlrModel:
    patterns: Tuple[Pattern, ...]
    weights: Tuple[float, ...]
    bias: float = 0.0
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "patterns", tuple(self.patterns))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "bias", float(self.bias))
        if len(self.weights) != len(self.patterns):
            raise DataError(
                f"model has {len(self.patterns)} pattern(s) but {len(self.weights)} weight(s)"
            )
        for value in self.weights + (self.bias,):
            if not math.isfinite(value):
                raise DataError("model weights and bias must be finite")

    @property
    def dimension(self) -> int:
        return len(self.patterns)

    def logit(self, f: Sequence[int]) -> float:
        if len(f) != self.dimension:
            raise DataError(f"feature vector has length {len(f)}, model expects {self.dimension}")
        return sum(w * x for w, x in zip(self.weights, f)) + self.bias

    def to_dict(self) -> Dict:
        return {
            "patterns": [p.to_dict() for p in self.patterns],
            "weights": [format_real(w) for w in self.weights],
            "bias": format_real(self.bias),
            "meta": dict(self.meta),
        }

    @classmethod
    def from_dict(cls, payload: Dict) -> "PlrModel":
        if not isinstance(payload, dict):
            raise ModelFormatError("model file must be a JSON object")
        for key in ("patterns", "weights", "bias"):
            if key not in payload:
                raise ModelFormatError(f"model file is missing {key!r}")
        if not isinstance(payload["patterns"], list) or not isinstance(payload["weights"], list):
            raise ModelFormatError("model 'patterns' and 'weights' must be arrays")
        patterns = [Pattern.from_dict(p) for p in payload["patterns"]]
        check_unique(patterns)
        weights = [parse_real(w, f"weight {i}") for i, w in enumerate(payload["weights"])]
        bias = parse_real(payload["bias"], "bias")
        try:
            return cls(tuple(patterns), tuple(weights), bias, dict(payload.get("meta") or {}))
        except DataError as e:
            raise ModelFormatError(str(e)) from e


def extract_features(model: PlrModel, doc: Document) -> FeatureVector:
    return tuple(1 if matches(p, doc) else 0 for p in model.patterns)


def predict_proba(model: PlrModel, f: Sequence[int]) -> float:
    """P(y=1|x) for a feature vector."""
    return sigmoid(model.logit(f))


def predict(model: PlrModel, doc: Document) -> Tuple[int, float]:
    """(predicted class, P(y=1|x)) for a document."""
    proba = predict_proba(model, extract_features(model, doc))
    return predicted_class(proba), proba


def load_model(path: Union[str, Path]) -> PlrModel:
    model = PlrModel.from_dict(read_json(path))
    logger.info("Loaded model with %d pattern(s) from %s", model.dimension, path)
    return model


def save_model(model: PlrModel, path: Union[str, Path]) -> None:
    write_json(path, model.to_dict())
    logger.info("Saved model with %d pattern(s) to %s", model.dimension, path)


def feature_matrix(model: PlrModel, docs: Sequence[Document]) -> List[FeatureVector]:
    return [extract_features(model, doc) for doc in docs]

from dataclasses import dataclass
from typing import List, Optional

from corpus.types import Document
from patterns.matching import first_span
from patterns.pattern import MatchSpan

from .model import PlrModel, extract_features, predict_proba, predicted_class


@dataclass(frozen=True)
class FlxItem:
    pattern_index: int
    span: Optional[MatchSpan]
    contribution: float


def flx(model: PlrModel, doc: Document, k: int) -> List[FlxItem]:
    """Top-k matched patterns by signed contribution (-1)^(y+1) * w_i toward the predicted class y."""
    if k < 0:
        raise ValueError(f"k must be non-negative, got {k}")
    f = extract_features(model, doc)
    y_hat = predicted_class(predict_proba(model, f))
    return flx_for_class(model, doc, y_hat, k, f)


def flx_for_class(model: PlrModel, doc: Document, y_hat: int, k: int, f=None) -> List[FlxItem]:
    if f is None:
        f = extract_features(model, doc)
    sign = 1.0 if y_hat == 1 else -1.0
    items = []
    for i, (w, bit) in enumerate(zip(model.weights, f)):
        contribution = sign * w * bit
        if bit == 0 or contribution == 0:
            continue
        items.append(FlxItem(i, first_span(model.patterns[i], doc), contribution))
    items.sort(key=lambda item: (-item.contribution, item.pattern_index))
    return items[:k]

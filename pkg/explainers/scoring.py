from typing import Iterable, List

from corpus.types import Document

from .explanation import ExplanationItem


def _signed(value: float, supported_class: int) -> float:
    # larger always means stronger evidence for class 1
    if value == 0:
        return 0.0
    return float(value) if supported_class == 1 else -float(value)


def adjusted_score(item: ExplanationItem) -> float:
    return _signed(item.strength, item.supported_class)


def adjusted_base_score(item: ExplanationItem) -> float:
    return _signed(item.base_score, item.supported_class)


def highlight_scores(n_tokens: int, items: Iterable[ExplanationItem]) -> List[float]:
    scores = [0.0] * n_tokens
    for item in items:
        value = adjusted_score(item)
        for i in set(item.span):
            if 0 <= i < n_tokens:
                scores[i] += value
    return scores


def token_highlights(doc: Document, items: Iterable[ExplanationItem]) -> List[float]:
    """Per-token sum of the adjusted scores of the items whose span covers the token."""
    return highlight_scores(len(doc.tokens), items)

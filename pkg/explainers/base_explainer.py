import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, Optional

from corpus.types import Dataset, Document
from patterns.matching import first_span, sample_phrases
from patterns.pattern import Pattern, describe
from plr.model import PlrModel
from qbaf.framework import DEFAULT_ID

from .explanation import Explanation, ExplanationItem, Polarity

logger = logging.getLogger(__name__)


def build_item(
    doc: Document,
    argument_id: str,
    pattern: Optional[Pattern],
    strength: float,
    base_score: float,
    supported_class: int,
    polarity: Polarity,
) -> ExplanationItem:
    """An explanation item whose span is the pattern's first match in ``doc``."""
    span = first_span(pattern, doc) if pattern is not None else None
    indices = span.token_indices if span is not None else ()
    if pattern is not None:
        code, description = pattern.encode(), describe(pattern)
    elif argument_id == DEFAULT_ID:
        code, description = "default", "bias term"
    else:
        # synthetic frameworks carry no patterns
        code, description = argument_id, ""
    return ExplanationItem(
        argument_id,
        code,
        description,
        tuple(indices),
        doc.span_text(indices),
        strength,
        base_score,
        supported_class,
        polarity,
    )


class BaseExplainer(ABC):
    """Explains single predictions of a pattern-based model; batches run in a worker pool."""

    def __init__(self, name: str, model: PlrModel, sample_corpus: Optional[Dataset] = None, samples_per_pattern: int = 5):
        self.name = name
        self.model = model
        self.sample_corpus = sample_corpus
        self.samples_per_pattern = samples_per_pattern
        self.explained_count = 0
        self.skipped_count = 0

    @abstractmethod
    def explain(self, doc: Document) -> Explanation:
        pass

    def explain_all(
        self, docs: Iterable[Document], jobs: int = 1, min_probability: Optional[float] = None
    ) -> List[Explanation]:
        """Explain every document, ordered by document id whatever the scheduling.

        With ``min_probability`` set, documents whose predicted-class probability
        is not above it are skipped.
        """
        docs = sorted(docs, key=lambda d: d.id)
        if jobs > 1 and len(docs) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(self.explain, docs))
        else:
            results = [self.explain(d) for d in docs]
        if min_probability is not None:
            kept = [e for e in results if e.probability > min_probability]
            self.skipped_count += len(results) - len(kept)
            results = kept
        self.explained_count += len(results)
        logger.info("%s explained %d document(s)", self.name, len(results))
        return results

    def samples_for(self, items: Iterable[ExplanationItem]) -> Dict[str, List[str]]:
        if self.sample_corpus is None:
            return {}
        by_code = {p.encode(): p for p in self.model.patterns}
        samples = {}
        for item in items:
            pattern = by_code.get(item.pattern)
            if pattern is not None and item.pattern not in samples:
                samples[item.pattern] = sample_phrases(pattern, self.sample_corpus, self.samples_per_pattern)
        return samples

    def get_status(self) -> Dict:
        return {
            "name": self.name,
            "patterns": self.model.dimension,
            "explained": self.explained_count,
            "skipped": self.skipped_count,
        }

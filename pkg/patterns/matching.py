from typing import List, Optional

from corpus.types import Dataset, Document

from .pattern import MatchSpan, Pattern


def _feasibility(p: Pattern, doc: Document) -> List[List[bool]]:
    """feasible[k][i]: slots k.. can be matched with slot k placed on token i."""
    n = len(doc.tokens)
    m = len(p.slots)
    hits = [[slot.matches(tok) for tok in doc.tokens] for slot in p.slots]
    feasible = [[False] * n for _ in range(m)]
    feasible[m - 1] = list(hits[m - 1])
    for k in range(m - 2, -1, -1):
        nxt = feasible[k + 1]
        for i in range(n):
            if not hits[k][i]:
                continue
            stop = min(n, i + 2 + p.gap_budget)
            feasible[k][i] = any(nxt[j] for j in range(i + 1, stop))
    return feasible


def find_spans(p: Pattern, doc: Document) -> List[MatchSpan]:
    """Leftmost-minimal span for every start index that begins a match, ordered by start."""
    if not doc.tokens or not (p.attribute_set() <= doc.attribute_set()):
        return []
    feasible = _feasibility(p, doc)
    n = len(doc.tokens)
    spans = []
    for start in range(n):
        if not feasible[0][start]:
            continue
        indices = [start]
        for k in range(1, len(p.slots)):
            prev = indices[-1]
            stop = min(n, prev + 2 + p.gap_budget)
            # feasibility guarantees one exists
            indices.append(next(j for j in range(prev + 1, stop) if feasible[k][j]))
        spans.append(MatchSpan(tuple(indices)))
    return spans


def first_span(p: Pattern, doc: Document) -> Optional[MatchSpan]:
    spans = find_spans(p, doc)
    return spans[0] if spans else None


def matches(p: Pattern, doc: Document) -> bool:
    if not doc.tokens or not (p.attribute_set() <= doc.attribute_set()):
        return False
    return any(_feasibility(p, doc)[0])


def span_is_valid(p: Pattern, doc: Document, span: MatchSpan) -> bool:
    """Direct re-verification of a span against its pattern."""
    idx = span.token_indices
    if len(idx) != len(p.slots):
        return False
    for k, i in enumerate(idx):
        if not (0 <= i < len(doc.tokens)) or not p.slots[k].matches(doc.tokens[i]):
            return False
    for a, b in zip(idx, idx[1:]):
        if b <= a or b - a - 1 > p.gap_budget:
            return False
    return True


def sample_phrases(p: Pattern, dataset: Dataset, limit: int = 5) -> List[str]:
    """Up to `limit` unique matched phrases (first token to last token of a span), in corpus order."""
    phrases: List[str] = []
    for doc in dataset:
        for span in find_spans(p, doc):
            phrase = doc.span_text(range(span.first, span.last + 1))
            if phrase not in phrases:
                phrases.append(phrase)
                if len(phrases) >= limit:
                    return phrases
    return phrases

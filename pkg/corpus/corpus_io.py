import json
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Union

from utils.helpers import CorpusFormatError, DataError, write_text

from .types import TEXT_KIND, Attribute, Dataset, Document, Lexicon, Token

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def load_corpus(path: PathLike, require_labels: bool = True) -> Dataset:
    """Load a line-delimited JSON corpus, one document per line, in file order."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = f.readlines()
    except OSError as e:
        raise CorpusFormatError(f"cannot read corpus: {e}", path=path) from e

    documents: List[Document] = []
    seen_ids = set()
    for line_number, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise CorpusFormatError(f"invalid JSON: {e.msg}", path=path, line_number=line_number) from e
        try:
            doc = _document_from_record(record, require_labels)
        except DataError as e:
            raise CorpusFormatError(str(e), path=path, line_number=line_number) from e
        if doc.id in seen_ids:
            raise CorpusFormatError(f"duplicate document id {doc.id!r}", path=path, line_number=line_number)
        seen_ids.add(doc.id)
        documents.append(doc)

    logger.info("Loaded %d document(s) from %s", len(documents), path)
    return Dataset(tuple(documents))


def _document_from_record(record: Dict, require_labels: bool) -> Document:
    if not isinstance(record, dict):
        raise DataError("record must be a JSON object")
    doc_id = record.get("id")
    if not isinstance(doc_id, str) or not doc_id:
        raise DataError("field 'id' must be a non-empty string")

    label = record.get("label")
    if label is None:
        if require_labels:
            raise DataError(f"document {doc_id!r} has no label")
    elif isinstance(label, bool) or not isinstance(label, int) or label not in (0, 1):
        raise DataError(f"document {doc_id!r}: label must be 0 or 1, got {label!r}")

    raw_tokens = record.get("tokens", [])
    if not isinstance(raw_tokens, list):
        raise DataError(f"document {doc_id!r}: field 'tokens' must be an array")
    tokens = []
    for raw in raw_tokens:
        if not isinstance(raw, dict) or not isinstance(raw.get("surface"), str):
            raise DataError(f"document {doc_id!r}: every token needs a string 'surface'")
        attrs = raw.get("attrs", [])
        if not isinstance(attrs, list):
            raise DataError(f"document {doc_id!r}: token 'attrs' must be an array")
        tokens.append(Token(raw["surface"], frozenset(Attribute.parse(a) for a in attrs)))
    return Document(doc_id, tuple(tokens), label)


def document_to_record(doc: Document) -> Dict:
    tokens = []
    for token in doc.tokens:
        entry = {"surface": token.surface}
        attrs = sorted(a.encode() for a in token.attributes if a.kind != TEXT_KIND)
        if attrs:
            entry["attrs"] = attrs
        tokens.append(entry)
    record = {"id": doc.id, "tokens": tokens}
    if doc.label is not None:
        record["label"] = doc.label
    return record


def save_corpus(dataset: Dataset, path: PathLike) -> None:
    """Write the corpus back in the line-delimited format read by load_corpus."""
    lines = [json.dumps(document_to_record(doc), ensure_ascii=False, sort_keys=True) for doc in dataset]
    try:
        write_text(path, "".join(line + "\n" for line in lines))
    except OSError as e:
        raise DataError(f"cannot write corpus {path}: {e}") from e
    logger.info("Saved %d document(s) to %s", len(dataset), path)


def load_lexicon(path: PathLike) -> Lexicon:
    """First line `KIND:value`, then one word per line."""
    try:
        with open(path, "r", encoding="utf-8") as f:
            lines = [line.strip() for line in f]
    except OSError as e:
        raise CorpusFormatError(f"cannot read lexicon: {e}", path=path) from e
    lines = [line for line in lines if line]
    if not lines:
        raise CorpusFormatError("empty lexicon file", path=path, line_number=1)
    try:
        header = Attribute.parse(lines[0])
        lexicon = Lexicon(header.kind, header.value, frozenset(lines[1:]))
    except DataError as e:
        raise CorpusFormatError(str(e), path=path, line_number=1) from e
    logger.info("Loaded lexicon %s with %d entries from %s", header.encode(), len(lexicon.entries), path)
    return lexicon


def annotate(doc: Document, lexicons: Iterable[Lexicon]) -> Document:
    """Return a copy whose tokens carry the attributes of every lexicon containing them."""
    lexicons = list(lexicons)
    tokens = []
    for token in doc.tokens:
        extra = [lex.attribute for lex in lexicons if lex.contains(token.surface)]
        tokens.append(token.with_attributes(extra) if extra else token)
    return Document(doc.id, tuple(tokens), doc.label)


def annotate_dataset(dataset: Dataset, lexicons: Iterable[Lexicon]) -> Dataset:
    lexicons = list(lexicons)
    return Dataset(tuple(annotate(doc, lexicons) for doc in dataset))


def select_documents(dataset: Dataset, doc_ids: Optional[Iterable[str]] = None) -> List[Document]:
    """Documents ordered by id, optionally restricted to the given ids."""
    if doc_ids is None:
        docs = list(dataset)
    else:
        docs = [dataset.get(doc_id) for doc_id in doc_ids]
    return sorted(docs, key=lambda d: d.id)

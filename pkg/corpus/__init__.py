from .types import TEXT_KIND, Attribute, Dataset, Document, Lexicon, Token
from .corpus_io import annotate, annotate_dataset, load_corpus, load_lexicon, save_corpus

__all__ = [
    "TEXT_KIND",
    "Attribute",
    "Dataset",
    "Document",
    "Lexicon",
    "Token",
    "annotate",
    "annotate_dataset",
    "load_corpus",
    "load_lexicon",
    "save_corpus",
]

from pathlib import Path

import pytest

from corpus.corpus_io import annotate_dataset, load_corpus, load_lexicon
from plr.model import load_model

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
RUNNING = FIXTURES / "running_example"
SYNTHETIC = FIXTURES / "synthetic"


@pytest.fixture(scope="session")
def running_model():
    return load_model(RUNNING / "model.json")


@pytest.fixture(scope="session")
def running_doc():
    return load_corpus(RUNNING / "corpus.jsonl").get("running-example")


@pytest.fixture(scope="session")
def synthetic_raw():
    return load_corpus(SYNTHETIC / "corpus.jsonl")


@pytest.fixture(scope="session")
def synthetic_corpus(synthetic_raw):
    lexicons = [load_lexicon(SYNTHETIC / "promo_lexicon.txt"), load_lexicon(SYNTHETIC / "work_lexicon.txt")]
    return annotate_dataset(synthetic_raw, lexicons)

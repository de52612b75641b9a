import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # stubs / oracles helpers

from sentasm.inflect import Inflector
from sentasm.ingest import build_corpus, load_embeddings, load_lexicon, load_stopwords
from sentasm.mutation import MutationResources

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS_DIR = FIXTURES / "corpus"
RESOURCES_DIR = FIXTURES / "resources"
SEEDS_DIR = FIXTURES / "seeds"


@pytest.fixture(scope="session")
def corpus():
    return build_corpus(
        CORPUS_DIR / "sentences.conllu",
        CORPUS_DIR / "trees.ptb",
        CORPUS_DIR / "labels.jsonl",
    )


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords(RESOURCES_DIR / "stopwords.txt")


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(RESOURCES_DIR / "lexicon.tsv")


@pytest.fixture(scope="session")
def embeddings():
    return load_embeddings(RESOURCES_DIR / "embeddings.txt")


@pytest.fixture(scope="session")
def resources(lexicon, embeddings, stopwords):
    return MutationResources(
        lexicon=lexicon,
        embeddings=embeddings,
        stopwords=stopwords,
        inflector=Inflector.default(),
    )

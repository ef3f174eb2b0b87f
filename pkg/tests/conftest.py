from importlib import resources
from pathlib import Path

import pytest

from lsakit import corpus, lsa

GOLDEN_DIR = Path(__file__).parent / "golden"
DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return GOLDEN_DIR


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def shipped_data(tmp_path_factory):
    root = tmp_path_factory.mktemp("shipped")
    data = resources.files("lsakit.data")
    for name in ("titles.tsv", "tokenizer.cfg"):
        (root / name).write_bytes(data.joinpath(name).read_bytes())
    return root


@pytest.fixture(scope="session")
def table_matrix():
    docs = corpus.example_corpus()
    config = corpus.default_config()
    vocab = corpus.select_vocabulary(docs, config)
    return corpus.build_matrix(docs, vocab, config)


@pytest.fixture(scope="session")
def model(table_matrix):
    return lsa.fit(table_matrix)

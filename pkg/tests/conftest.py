import pytest

from _corpus import build_corpus_store


@pytest.fixture(scope="session")
def corpus_store(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus-store")
    return build_corpus_store(root)

import pytest

from weylinv.corpus import generate_corpus
from weylinv.morphism import invert


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus()


@pytest.fixture(scope="session")
def corpus_m0(corpus):
    return [(name, e) for name, e in corpus if e.sig.m == 0]


@pytest.fixture(scope="session")
def inversions(corpus):
    return {name: invert(e) for name, e in corpus}

import pytest

from fracsmooth import default_corpus, find_beta0


@pytest.fixture(scope="session")
def corpus_members():
    """The standard six-member (fid, TrigPoly) corpus."""
    return default_corpus()


@pytest.fixture(scope="session")
def beta0_record():
    """The first pathological pair, refined once per session."""
    return find_beta0()

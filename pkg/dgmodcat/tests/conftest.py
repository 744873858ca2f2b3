from typing import Dict

import numpy as np
import pytest

from dgmodcat.algebra.builders import builtin_catalog
from dgmodcat.instances.corpus import CORPUS_NAMES, Corpus, corpus
from dgmodcat.linalg.field import get_field


class SessionInfo:
    corpora: Dict[str, Corpus]


def pytest_sessionstart(session):
    SessionInfo.corpora = {name: corpus(name) for name in CORPUS_NAMES}


@pytest.fixture()
def corpora():
    return SessionInfo.corpora


@pytest.fixture()
def rationals():
    return get_field("Q")


@pytest.fixture()
def f2():
    return get_field("Fp:2")


@pytest.fixture()
def f3():
    return get_field("Fp:3")


@pytest.fixture()
def rng():
    return np.random.default_rng(20261016)


@pytest.fixture()
def dual_numbers():
    return builtin_catalog("dual_numbers(2)")


@pytest.fixture()
def dual_numbers_f3():
    return builtin_catalog("dual_numbers(3)")


@pytest.fixture()
def exterior():
    return builtin_catalog("exterior(2)")


@pytest.fixture()
def cone_dga():
    return builtin_catalog("cone_dga(2)")


@pytest.fixture()
def arrow_algebra():
    return builtin_catalog("upper_triangular(3)")


@pytest.fixture()
def truncated_f3():
    return builtin_catalog("truncated(3,3)")

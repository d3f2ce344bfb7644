import random

import pytest

from geobound.constructions import builtin


@pytest.fixture(scope="session")
def fig8():
    return builtin("fig8").data


@pytest.fixture(scope="session")
def sibling():
    return builtin("sibling").data


@pytest.fixture(scope="session")
def paper_T():
    return builtin("paperT").data


@pytest.fixture
def rng():
    return random.Random(20201017)

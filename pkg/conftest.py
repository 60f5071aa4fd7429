"""Shared pytest fixtures: fields, codes and a seeded generator."""

import numpy as np
import pytest

from services.bch_code import code_from_length
from services.monitoring import decode_monitor
from utils.galois_field import GaloisField


@pytest.fixture(scope='session')
def gf16():
    return GaloisField(4)


@pytest.fixture(scope='session')
def gf256():
    return GaloisField(8)


@pytest.fixture(scope='session')
def code15_2():
    return code_from_length(15, 2)


@pytest.fixture(scope='session')
def code31_3():
    return code_from_length(31, 3)


@pytest.fixture(scope='session')
def code255_8():
    return code_from_length(255, 8)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(autouse=True)
def clean_monitor():
    decode_monitor.reset()
    yield
    decode_monitor.reset()

# tests/conftest.py

import random
from math import gcd

import pytest

from src.core.cm import CmParams, Polarization

SWEEP_CMS = [(0, 1, 1), (1, 1, 1), (0, 2, 1), (1, 2, 1)]


def cm_grid(u_max: int = 3, vw_max: int = 9):
    """Every valid CM triple with |u| <= u_max and 1 <= v*w <= vw_max."""
    triples = []
    for u in range(-u_max, u_max + 1):
        for w in range(1, vw_max + 1):
            for v in range(1, vw_max // w + 1):
                if gcd(gcd(u, v), w) == 1 and u * u - 4 * v * w < 0:
                    triples.append((u, v, w))
    return triples


@pytest.fixture
def gaussian() -> CmParams:
    return CmParams(u=0, v=1, w=1)


@pytest.fixture
def eisenstein() -> CmParams:
    return CmParams(u=1, v=1, w=1)


@pytest.fixture
def principal2() -> Polarization:
    return Polarization(multipliers=(1, 1))


@pytest.fixture
def principal3() -> Polarization:
    return Polarization(multipliers=(1, 1, 1))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)

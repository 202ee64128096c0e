"""
Shared fixtures: the E1 algebra, its regular module and the polynomial examples.
"""

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from modules.algebra import FDBiHomAlgebra  # noqa: E402
from modules.bihom_modules import regular_module  # noqa: E402
from modules.linalg import diag, empty_tensor, identity  # noqa: E402
from modules.poly_family import PolyBiHomAlgebra  # noqa: E402

FIXTURES = os.path.join(ROOT, 'fixtures')


def build_algebra(dim, entries, alpha, beta, name="algebra", labels=()):
    """Algebra from sparse (i, j, k, value) structure constants."""
    mu = empty_tensor(dim, dim, dim)
    for i, j, k, value in entries:
        mu[i, j, k] = value
    return FDBiHomAlgebra(dim, tuple(labels), mu, alpha, beta, name)


E1_ENTRIES = [(0, 0, 0, 1), (0, 1, 1, 3), (1, 0, 1, 2)]


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


@pytest.fixture
def make_algebra():
    return build_algebra


@pytest.fixture
def e1():
    """Yau twist of K[x]/(x^2) by alpha = diag(1, 2), beta = diag(1, 3)."""
    return build_algebra(2, E1_ENTRIES, diag(1, 2), diag(1, 3), "E1", ("e0", "e1"))


@pytest.fixture
def zero_algebra():
    """K^2 with zero multiplication and identity twists."""
    return build_algebra(2, [], identity(2), identity(2), "zero")


@pytest.fixture
def regular_e1(e1):
    return regular_module(e1)


@pytest.fixture
def poly_r1():
    return PolyBiHomAlgebra(1, ((2,),), ((3,),), "poly-r1")


@pytest.fixture
def poly_r2():
    return PolyBiHomAlgebra(2, ((1, 1), (0, 1)), ((1, 2), (0, 1)), "poly-r2")

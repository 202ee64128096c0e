"""
Seeded property suites and the instance generators behind them.
"""

import numpy as np
import pytest

from checks.property_suites import (
    SUITES, cyclic_group_core, morphism_duality_suite, permute_core, random_algebra, random_subspace,
    tensor_kernel_suite, truncated_polynomial_core, yau_suite,
)
from modules.algebra import validate_algebra, validate_associative_core, yau_twist
from modules.linalg import bilinear_tensor


@pytest.mark.parametrize("core", [
    truncated_polynomial_core(3, 2, -1),
    truncated_polynomial_core(1, 0, 5),
    cyclic_group_core(4, 3, 2),
    cyclic_group_core(5, 0, 1),
    permute_core(*truncated_polynomial_core(3, 2, 3), [2, 0, 1]),
], ids=["K[x]/(x^3)", "K", "C4", "C5 zero power", "permuted K[x]/(x^3)"])
def test_generated_cores_satisfy_yau_preconditions(core):
    mu, alpha, beta = core
    assert validate_associative_core(mu, alpha, beta).passed
    n = alpha.rows
    assert validate_algebra(yau_twist(bilinear_tensor(mu, n, n), alpha, beta)).passed


def test_random_algebras_are_deterministic():
    first = random_algebra(np.random.default_rng(11), 4, 3)
    second = random_algebra(np.random.default_rng(11), 4, 3)
    assert first.name == second.name
    assert first.same_as(second)


def test_random_subspace_dimensions():
    rng = np.random.default_rng(5)
    for _ in range(20):
        s = random_subspace(rng, 4, 2)
        assert s.ambient_dim == 4
        assert 0 <= s.dim <= 4


def test_yau_suite_default_size():
    report = yau_suite(0)
    assert report.passed, report.render_text()
    assert "200 algebras" in report.subject and "dim <= 4" in report.subject


def test_morphism_duality_suite_default_size():
    report = morphism_duality_suite(0)
    assert report.passed, report.render_text()
    assert report.get("verdicts agree").detail.endswith("of 100 maps are morphisms")


def test_tensor_kernel_suite_default_size():
    report = tensor_kernel_suite(0)
    assert report.passed, report.render_text()
    assert "50 pairs" in report.subject


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_with_other_seeds(name):
    for seed in (1, 2):
        assert SUITES[name](seed, count=5, max_dim=3).passed

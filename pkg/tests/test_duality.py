"""
Tests for Sweedler functionals: wrapping, arithmetic, comultiplication,
twists and dual morphisms.
"""

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational

from modules.algebra import AlgebraMorphism, identity_morphism, is_ideal
from modules.duality import (
    SweedlerFunctional, delta_pairing_report, delta_tensor, dual_morphism_compatibility, sweedler_add,
    sweedler_delta, sweedler_dual_morphism, sweedler_scale, sweedler_twist, sweedler_wrap,
    tensor_quotient_kernel,
)
from modules.linalg import Matrix, Subspace, diag, matrix
from utils.errors import ContractError, InputError

from conftest import E1_ENTRIES, build_algebra

SPAN_E1 = Subspace.span([[0, 1]], 2)


@pytest.fixture
def zero_ideal(e1):
    return is_ideal(e1, Subspace.zero(2))


@pytest.fixture
def span_e1(e1):
    return is_ideal(e1, SPAN_E1)


def test_wrap_and_pair(e1, zero_ideal):
    f = sweedler_wrap(e1, [0, 1], zero_ideal)
    assert f.coeffs == (Rational(0), Rational(1))
    assert f.pair([5, 7]) == 7
    assert not f.is_zero
    assert sweedler_scale(f, 0).is_zero


def test_wrap_rejects_functional_not_vanishing_on_witness(e1, span_e1):
    with pytest.raises(ContractError) as info:
        sweedler_wrap(e1, [0, 1], span_e1)
    check = info.value.report.get("functional vanishes on witness")
    assert not check.passed
    assert check.witness == {"basis vector": ["0", "1"], "value": "1"}


def test_wrap_rejects_non_ideal_witness(e1):
    with pytest.raises(ContractError):
        sweedler_wrap(e1, [0, 0], is_ideal(e1, Subspace.span([[1, 0]], 2)))


def test_wrap_rejects_wrong_length(e1, zero_ideal):
    with pytest.raises(InputError):
        sweedler_wrap(e1, [1, 2, 3], zero_ideal)


def test_delta_of_e1_star(e1, zero_ideal):
    f = sweedler_wrap(e1, [0, 1], zero_ideal)
    pairs = sweedler_delta(f)
    assert delta_tensor(pairs, 2) == Matrix([[0, 3], [2, 0]])
    assert delta_pairing_report(f, pairs).passed
    for left, right in pairs:
        assert left.witness is zero_ideal and right.witness is zero_ideal


def test_delta_of_e0_star_with_span_e1_witness(e1, span_e1):
    f = sweedler_wrap(e1, [1, 0], span_e1)
    pairs = sweedler_delta(f)
    assert len(pairs) == 1
    left, right = pairs[0]
    assert left.coeffs == (1, 0) and right.coeffs == (1, 0)
    assert delta_tensor(pairs, 2) == Matrix([[1, 0], [0, 0]])
    assert delta_pairing_report(f, pairs).passed


def test_delta_of_zero_functional(e1, zero_ideal):
    assert sweedler_delta(sweedler_wrap(e1, [0, 0], zero_ideal)) == []


def test_delta_on_full_witness_is_empty(e1):
    full = is_ideal(e1, Subspace.full(2))
    assert sweedler_delta(sweedler_wrap(e1, [0, 0], full)) == []


def test_delta_rejects_tampered_functional(e1, span_e1):
    forged = SweedlerFunctional(e1, (0, 1), span_e1)
    with pytest.raises(ContractError):
        sweedler_delta(forged)


def test_pairing_report_detects_wrong_pairs(e1, zero_ideal):
    f = sweedler_wrap(e1, [0, 1], zero_ideal)
    pairs = sweedler_delta(f)[:1]
    check = delta_pairing_report(f, pairs).get("pairing identity")
    assert not check.passed
    assert check.witness["lhs"] != check.witness["rhs"]


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5))
def test_delta_pairing_identity_holds(x, y):
    e1 = build_algebra(2, E1_ENTRIES, diag(1, 2), diag(1, 3), "E1")
    f = sweedler_wrap(e1, [x, y], is_ideal(e1, Subspace.zero(2)))
    assert delta_pairing_report(f, sweedler_delta(f)).passed


def test_add_intersects_witnesses(e1, zero_ideal, span_e1):
    f = sweedler_wrap(e1, [1, 0], span_e1)
    g = sweedler_wrap(e1, [0, 1], zero_ideal)
    h = sweedler_add(f, g)
    assert h.coeffs == (1, 1)
    assert h.witness.subspace.dim == 0
    same = sweedler_add(f, f)
    assert same.coeffs == (2, 0)
    assert same.witness.subspace == SPAN_E1


def test_add_on_different_algebras(e1, zero_algebra, zero_ideal):
    f = sweedler_wrap(e1, [1, 0], zero_ideal)
    g = sweedler_wrap(zero_algebra, [1, 0], is_ideal(zero_algebra, Subspace.zero(2)))
    with pytest.raises(InputError):
        sweedler_add(f, g)


def test_scale(e1, span_e1):
    f = sweedler_scale(sweedler_wrap(e1, [1, 0], span_e1), Rational(-1, 2))
    assert f.coeffs == (Rational(-1, 2), 0)
    assert f.witness is span_e1


def test_twists(e1, zero_ideal):
    f = sweedler_wrap(e1, [0, 1], zero_ideal)
    assert sweedler_twist(f, "alpha").coeffs == (0, 2)
    assert sweedler_twist(f, "beta").coeffs == (0, 3)
    with pytest.raises(InputError):
        sweedler_twist(f, "gamma")


def test_dual_morphism(e1, zero_ideal):
    f = AlgebraMorphism(e1, e1, diag(1, 2))
    b = sweedler_wrap(e1, [0, 1], zero_ideal)
    image = sweedler_dual_morphism(f, b)
    assert image.coeffs == (0, 2)
    assert image.witness.subspace.dim == 0
    assert dual_morphism_compatibility(f, b).passed


def test_dual_morphism_of_zero_map_has_full_witness(e1, span_e1):
    f = AlgebraMorphism(e1, e1, matrix(2, 2))
    image = sweedler_dual_morphism(f, sweedler_wrap(e1, [1, 0], span_e1))
    assert image.is_zero
    assert image.witness.codim == 0


def test_dual_morphism_compatibility_with_span_witness(e1, span_e1):
    b = sweedler_wrap(e1, [1, 0], span_e1)
    for m in (diag(1, 2), diag(1, 1)):
        assert dual_morphism_compatibility(AlgebraMorphism(e1, e1, m), b).passed
    assert dual_morphism_compatibility(identity_morphism(e1), b).passed


def test_dual_morphism_rejects_non_morphism(e1, zero_ideal):
    f = AlgebraMorphism(e1, e1, matrix(2, 2, [0, 0, 1, 0]))
    with pytest.raises(ContractError) as info:
        sweedler_dual_morphism(f, sweedler_wrap(e1, [0, 1], zero_ideal))
    assert not info.value.report.passed


def test_tensor_quotient_kernel():
    i = Subspace.span([[0, 1]], 2)
    kernel, report = tensor_quotient_kernel(2, 3, i, Subspace.zero(3))
    assert report.passed
    assert kernel.dim == 3
    kernel, report = tensor_quotient_kernel(2, 2, i, i)
    assert report.passed
    assert kernel.dim == 3
    kernel, report = tensor_quotient_kernel(2, 2, Subspace.full(2), Subspace.zero(2))
    assert kernel.dim == 4


def test_tensor_quotient_kernel_dimension_mismatch():
    with pytest.raises(InputError):
        tensor_quotient_kernel(3, 2, Subspace.zero(2), Subspace.zero(2))

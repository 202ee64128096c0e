"""
Tests for BiHom-algebra validation, ideals, quotients and morphisms.
"""

import pytest

from modules.algebra import (
    AlgebraMorphism, compose_morphisms, factor_through_quotient, ideal_closure, identity_morphism,
    intersect_ideals, intersection_bookkeeping, is_ideal, is_subalgebra, preimage_ideal, quotient_algebra,
    specialization, validate_algebra, validate_morphism, yau_twist,
)
from modules.linalg import Matrix, Subspace, diag, identity, kernel_basis, matrix, zero_matrix
from utils.errors import ContractError, InputError, PreconditionError

from conftest import E1_ENTRIES, build_algebra

AXIOMS = ["twist commutation", "BiHom-associativity", "alpha-multiplicativity", "beta-multiplicativity"]

SPAN_E1 = Subspace.span([[0, 1]], 2)


def truncated_square_core():
    """K[x]/(x^2): 1*1 = 1, 1*x = x*1 = x."""
    return build_algebra(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)], identity(2), identity(2), "K[x]/(x^2)")


def test_e1_passes_all_axioms(e1):
    report = validate_algebra(e1)
    assert report.passed
    assert [c.name for c in report.checks] == AXIOMS


def test_e1_is_yau_twist_of_truncated_polynomials(e1):
    core = truncated_square_core()
    twisted = yau_twist(core.mu, diag(1, 2), diag(1, 3), name="E1")
    assert twisted.mu_matrix == e1.mu_matrix


def test_yau_twist_rejects_non_endomorphism():
    core = truncated_square_core()
    with pytest.raises(PreconditionError) as info:
        yau_twist(core.mu, diag(2, 1), diag(1, 1))
    assert not info.value.report.passed


MUTANTS = [
    ("mu[0][1][1] = 4", [(0, 0, 0, 1), (0, 1, 1, 4), (1, 0, 1, 2)], (1, 2), (1, 3)),
    ("mu[1][0][1] = 5", [(0, 0, 0, 1), (0, 1, 1, 3), (1, 0, 1, 5)], (1, 2), (1, 3)),
    ("mu[0][0][0] = 2", [(0, 0, 0, 2), (0, 1, 1, 3), (1, 0, 1, 2)], (1, 2), (1, 3)),
    ("alpha[1][1] = 5", E1_ENTRIES, (1, 5), (1, 3)),
    ("beta[1][1] = 7", E1_ENTRIES, (1, 2), (1, 7)),
    ("mu[1][1][0] = 1", E1_ENTRIES + [(1, 1, 0, 1)], (1, 2), (1, 3)),
]


@pytest.mark.parametrize("label, entries, alpha, beta", MUTANTS, ids=[m[0] for m in MUTANTS])
def test_single_entry_mutants_fail_with_witness(label, entries, alpha, beta):
    a = build_algebra(2, entries, diag(*alpha), diag(*beta), label)
    report = validate_algebra(a)
    assert not report.passed
    assert all(c.witness for c in report.failures())


def test_mutant_associativity_witness():
    a = build_algebra(2, [(0, 0, 0, 1), (0, 1, 1, 4), (1, 0, 1, 2)], diag(1, 2), diag(1, 3), "mutant", ("e0", "e1"))
    check = validate_algebra(a).get("BiHom-associativity")
    assert not check.passed
    assert check.witness == {"basis": ["e0", "e0", "e1"], "lhs": ["0", "16"], "rhs": ["0", "12"]}


def test_non_commuting_twists_fail(e1):
    swap = matrix(2, 2, [0, 1, 1, 0])
    report = validate_algebra(e1.with_twists(swap, diag(1, 3)))
    assert not report.get("twist commutation").passed


def test_shape_mismatch_is_input_error(e1):
    with pytest.raises(InputError):
        e1.with_twists(identity(3), identity(2))


def test_specialization(e1, zero_algebra):
    assert specialization(e1) == "bihom"
    assert specialization(zero_algebra) == "classical"
    assert specialization(e1.with_twists(diag(1, 2), diag(1, 2))) == "hom"


def test_morphisms_on_e1(e1):
    assert validate_morphism(identity_morphism(e1)).passed
    assert validate_morphism(AlgebraMorphism(e1, e1, zero_matrix(2, 2))).passed
    assert validate_morphism(AlgebraMorphism(e1, e1, diag(1, 2))).passed
    assert not validate_morphism(AlgebraMorphism(e1, e1, matrix(2, 2, [0, 0, 1, 0]))).passed


def test_composition_of_morphisms_validates(e1):
    f = AlgebraMorphism(e1, e1, diag(1, 2))
    g = compose_morphisms(f, f)
    assert g.map == diag(1, 4)
    assert validate_morphism(g).passed


def test_is_ideal_examples(e1):
    assert is_ideal(e1, Subspace.zero(2)).is_ideal
    assert is_ideal(e1, Subspace.zero(2)).codim == 2
    assert is_ideal(e1, Subspace.full(2)).codim == 0
    j = is_ideal(e1, SPAN_E1)
    assert j.is_ideal
    assert j.codim == 1


def test_non_ideal_reports_absorption_witness(e1):
    h = is_ideal(e1, Subspace.span([[1, 0]], 2))
    assert not h.absorbing
    assert h.twist_closed
    assert h.report.get("left absorption").witness is not None


def test_span_e0_is_a_subalgebra(e1):
    assert is_subalgebra(e1, Subspace.span([[1, 0]], 2)).passed


def test_ideal_closure(e1):
    assert ideal_closure(e1, []).subspace.dim == 0
    assert ideal_closure(e1, [[0, 1]]).subspace == SPAN_E1
    assert ideal_closure(e1, [[1, 0]]).subspace == Subspace.full(2)


def test_intersection_bookkeeping(zero_algebra, e1):
    j = is_ideal(zero_algebra, Subspace.span([[1, 0]], 2))
    h = is_ideal(zero_algebra, Subspace.span([[0, 1]], 2))
    k = intersect_ideals(j, h)
    assert k.subspace.dim == 0
    assert intersection_bookkeeping(j, h, k).passed
    j = is_ideal(e1, SPAN_E1)
    assert intersect_ideals(j, j).subspace == SPAN_E1
    assert intersect_ideals(j, is_ideal(e1, Subspace.full(2))).subspace == SPAN_E1


def test_intersect_ideals_of_different_algebras(e1, zero_algebra):
    with pytest.raises(InputError):
        intersect_ideals(is_ideal(e1, SPAN_E1), is_ideal(zero_algebra, SPAN_E1))


def test_preimage_ideal(e1):
    j = is_ideal(e1, SPAN_E1)
    assert preimage_ideal(identity_morphism(e1), j).subspace == SPAN_E1
    assert preimage_ideal(AlgebraMorphism(e1, e1, zero_matrix(2, 2)), j).subspace == Subspace.full(2)
    k = preimage_ideal(AlgebraMorphism(e1, e1, diag(1, 2)), j)
    assert k.subspace == SPAN_E1
    assert k.codim <= j.codim


def test_preimage_requires_a_morphism(e1):
    j = is_ideal(e1, SPAN_E1)
    with pytest.raises(ContractError):
        preimage_ideal(AlgebraMorphism(e1, e1, matrix(2, 2, [0, 0, 1, 0])), j)


def test_quotient_by_span_e1(e1):
    quot, pi = quotient_algebra(e1, is_ideal(e1, SPAN_E1))
    assert quot.dim == 1
    assert quot.mu_matrix == Matrix([[1]])
    assert quot.alpha == Matrix([[1]]) and quot.beta == Matrix([[1]])
    assert validate_algebra(quot).passed
    assert validate_morphism(pi).passed
    assert kernel_basis(pi.map) == SPAN_E1


def test_quotient_extremes(e1):
    quot, pi = quotient_algebra(e1, is_ideal(e1, Subspace.zero(2)))
    assert pi.map == identity(2)
    assert quot.mu_matrix == e1.mu_matrix
    empty, _ = quotient_algebra(e1, is_ideal(e1, Subspace.full(2)))
    assert empty.dim == 0


def test_quotient_needs_an_ideal(e1):
    with pytest.raises(ContractError):
        quotient_algebra(e1, is_ideal(e1, Subspace.span([[1, 0]], 2)))


def test_factor_through_quotient(e1):
    quot, pi = quotient_algebra(e1, is_ideal(e1, SPAN_E1))
    assert factor_through_quotient(pi, pi).map == identity(1)
    f = AlgebraMorphism(e1, quot, pi.map * e1.alpha)
    bar = factor_through_quotient(f, pi)
    assert bar.map * pi.map == f.map
    assert validate_morphism(bar).passed
    zero = factor_through_quotient(AlgebraMorphism(e1, quot, zero_matrix(1, 2)), pi)
    assert zero.map == zero_matrix(1, 1)


def test_factor_through_quotient_kernel_violation(e1):
    _, pi = quotient_algebra(e1, is_ideal(e1, SPAN_E1))
    with pytest.raises(PreconditionError):
        factor_through_quotient(identity_morphism(e1), pi)

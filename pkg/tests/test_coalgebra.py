"""
Tests for BiHom-coalgebras and the dual coalgebra of a finite algebra.
"""

import pytest
from hypothesis import given, settings, strategies as st

from modules.algebra import AlgebraMorphism, identity_morphism, validate_algebra, validate_morphism
from modules.coalgebra import (
    CoalgebraMorphism, FDBiHomCoalgebra, compose_coalgebra_morphisms, validate_coalgebra,
    validate_coalgebra_morphism,
)
from modules.duality import dual_algebra_morphism, dual_coalgebra, pairing_report
from modules.linalg import diag, empty_tensor, identity, kronecker, matrix
from utils.errors import ContractError, InputError

from conftest import build_algebra


def test_dual_of_e1_constants(e1):
    c = dual_coalgebra(e1)
    assert c.name == "E1*"
    assert c.basis_labels == ("e0*", "e1*")
    assert c.psi == e1.beta.T
    assert c.phi == e1.alpha.T
    assert c.delta[0, 0, 0] == 1
    assert c.delta[1, 0, 1] == 3
    assert c.delta[1, 1, 0] == 2
    assert validate_coalgebra(c).passed


def test_dual_of_e1_coassociativity_tensor(e1):
    c = dual_coalgebra(e1)
    d = c.delta_matrix
    lhs = kronecker(c.phi, d) * d
    rhs = kronecker(d, c.psi) * d
    assert lhs == rhs
    col = list(lhs[:, 1])
    assert col[1] == 9
    assert col[2] == 6
    assert col[4] == 4
    assert sum(1 for x in col if x != 0) == 3


def test_pairing_identity(e1):
    assert pairing_report(e1, dual_coalgebra(e1)).passed


def test_pairing_dimension_mismatch(e1):
    small = build_algebra(1, [(0, 0, 0, 1)], identity(1), identity(1), "K")
    with pytest.raises(InputError):
        pairing_report(small, dual_coalgebra(e1))


def test_dual_of_invalid_algebra_raises():
    mutant = build_algebra(2, [(0, 0, 0, 1), (0, 1, 1, 4), (1, 0, 1, 2)], diag(1, 2), diag(1, 3))
    with pytest.raises(ContractError) as info:
        dual_coalgebra(mutant)
    assert info.value.report.get("BiHom-associativity").witness is not None


def test_coassociativity_mutant_witness(e1):
    good = dual_coalgebra(e1)
    delta = empty_tensor(2, 2, 2)
    delta[0, 0, 0] = 1
    delta[1, 0, 1] = 4
    delta[1, 1, 0] = 2
    mutant = FDBiHomCoalgebra(2, good.basis_labels, delta, good.psi, good.phi, "mutant")
    report = validate_coalgebra(mutant)
    check = report.get("BiHom-coassociativity")
    assert not check.passed
    assert check.witness["basis"] == ["e1*"]
    assert check.witness["lhs"] != check.witness["rhs"]
    assert report.get("psi-comultiplicativity").passed


def test_default_coalgebra_labels():
    c = FDBiHomCoalgebra(2, (), empty_tensor(2, 2, 2), identity(2), identity(2))
    assert c.basis_labels == ("c0", "c1")
    assert validate_coalgebra(c).passed


def test_from_matrix_round_trip(e1):
    c = dual_coalgebra(e1)
    again = FDBiHomCoalgebra.from_matrix(c.delta_matrix, c.psi, c.phi, c.basis_labels)
    assert again.same_as(c)


def test_dual_morphisms_match_algebra_verdicts(e1):
    for m, expected in [(identity(2), True), (diag(1, 2), True), (matrix(2, 2, [0, 0, 1, 0]), False)]:
        g = dual_algebra_morphism(AlgebraMorphism(e1, e1, m))
        assert g.map == m.T
        assert validate_coalgebra_morphism(g).passed is expected


def test_compose_coalgebra_morphisms(e1):
    g = dual_algebra_morphism(AlgebraMorphism(e1, e1, diag(1, 2)))
    h = compose_coalgebra_morphisms(g, g)
    assert h.map == diag(1, 4)
    assert validate_coalgebra_morphism(h).passed


def test_compose_mismatched_coalgebra_morphisms(e1, zero_algebra):
    g = dual_algebra_morphism(identity_morphism(e1))
    h = dual_algebra_morphism(identity_morphism(zero_algebra))
    with pytest.raises(InputError):
        compose_coalgebra_morphisms(g, h)


def test_morphism_shape_is_checked(e1):
    c = dual_coalgebra(e1)
    with pytest.raises(InputError):
        CoalgebraMorphism(c, c, identity(3))


def test_dual_morphism_of_non_associative_algebra():
    bad = build_algebra(2, [(0, 0, 1, 1), (1, 1, 0, 1)], identity(2), diag(2, 2), "bad")
    assert not validate_algebra(bad).passed
    g = dual_algebra_morphism(identity_morphism(bad))
    assert g.source.name == "bad*"
    assert validate_coalgebra_morphism(g).passed


small = st.integers(-2, 2)


@settings(max_examples=60, deadline=None)
@given(st.lists(small, min_size=8, max_size=8), st.lists(small, min_size=8, max_size=8),
       st.lists(small, min_size=4, max_size=4), st.lists(small, min_size=4, max_size=4),
       st.lists(small, min_size=4, max_size=4))
def test_morphism_verdicts_agree_for_arbitrary_structures(src_mu, dst_mu, alpha, beta, m):
    def algebra(values, name):
        entries = [(i, j, k, v) for (i, j, k), v in zip(
            [(i, j, k) for i in range(2) for j in range(2) for k in range(2)], values)]
        return build_algebra(2, entries, matrix(2, 2, alpha), matrix(2, 2, beta), name)

    f = AlgebraMorphism(algebra(src_mu, "src"), algebra(dst_mu, "dst"), matrix(2, 2, m))
    assert validate_morphism(f).passed == validate_coalgebra_morphism(dual_algebra_morphism(f)).passed

"""
Tests for the canonical JSON codec and file reference resolution.
"""

import json

import pytest
from sympy import Rational

from modules.algebra import validate_algebra
from modules.bihom_modules import dual_comodule_morphism
from modules.duality import dual_coalgebra
from modules.linalg import Subspace
from modules.poly_family import CofiniteMonomialIdeal, DualFunctional
from modules.serialization import (
    algebra_from_dict, algebra_to_dict, coalgebra_from_dict, coalgebra_to_dict, comodule_map_from_dict,
    comodule_map_to_dict, dual_functional_from_dict, dual_functional_to_dict, dumps, functional_from_dict,
    ideal_from_dict, load_algebra, load_json, load_module, load_poly_algebra, module_from_dict,
    module_functional_from_dict, module_map_from_dict, module_to_dict, monomial_ideal_from_dict,
    monomial_ideal_to_dict, morphism_from_dict, morphism_to_dict, parse_tensor, poly_algebra_to_dict,
    subspace_from_dict, subspace_to_dict, write_json,
)
from utils.errors import ContractError, InputError
from utils.rationals import parse_rational


def read_text(path):
    with open(path, encoding='utf-8') as f:
        return f.read()


@pytest.mark.parametrize("name", ["E1.json", "poly-r1.json"])
def test_canonical_fixture_round_trip(fixture_path, name):
    path = fixture_path(name)
    if name.startswith("poly"):
        data = poly_algebra_to_dict(load_poly_algebra(path))
    else:
        data = algebra_to_dict(load_algebra(path))
    assert dumps(data) == read_text(path)


def test_loaded_e1_matches_fixture(fixture_path, e1):
    assert load_algebra(fixture_path("E1.json")).same_as(e1)
    assert not validate_algebra(load_algebra(fixture_path("E1-mutant.json"))).passed


def test_coalgebra_round_trip(e1):
    c = dual_coalgebra(e1)
    again = coalgebra_from_dict(json.loads(dumps(coalgebra_to_dict(c))))
    assert again.same_as(c)
    assert again.basis_labels == ("e0*", "e1*")


def test_write_json_is_canonical(tmp_path, e1):
    path = tmp_path / "e1.json"
    write_json(str(path), algebra_to_dict(e1))
    text = read_text(path)
    assert text.endswith("}\n")
    assert load_algebra(str(path)).same_as(e1)


def test_rationals_are_strings(e1):
    a = e1.with_twists(e1.alpha / 2, e1.beta)
    data = algebra_to_dict(a)
    assert data["alpha"] == ["1/2", "0", "0", "1"]
    assert algebra_from_dict(data).alpha == a.alpha


def test_parse_rational_rejects_floats():
    assert parse_rational("-2/4") == Rational(-1, 2)
    for bad in (0.5, True, "x", "1/0", None):
        with pytest.raises(InputError):
            parse_rational(bad)


def test_zero_denominator_message():
    with pytest.raises(InputError, match="zero denominator"):
        parse_rational("3/0", "mu[0]")


def test_tensor_errors():
    with pytest.raises(InputError):
        parse_tensor([[0, 0, 0, "1"], [0, 0, 0, "2"]], (2, 2, 2), "mu")
    with pytest.raises(InputError):
        parse_tensor([[0, 0, 2, "1"]], (2, 2, 2), "mu")
    with pytest.raises(InputError):
        parse_tensor([[0, 0, "1"]], (2, 2, 2), "mu")
    with pytest.raises(InputError):
        parse_tensor({"0": 1}, (2, 2, 2), "mu")


def test_missing_keys_and_bad_shapes():
    with pytest.raises(InputError):
        algebra_from_dict({"dim": 2, "mu": [], "alpha": ["1", "0", "0", "1"]})
    with pytest.raises(InputError):
        algebra_from_dict({"dim": 2, "mu": [], "alpha": ["1"], "beta": ["1", "0", "0", "1"]})
    with pytest.raises(InputError):
        algebra_from_dict({"dim": -1, "mu": [], "alpha": [], "beta": []})
    with pytest.raises(InputError):
        algebra_from_dict({"dim": 1, "mu": [], "alpha": ["1"], "beta": ["1"], "basis": ["a", "b"]})


def test_load_json_errors(tmp_path):
    with pytest.raises(InputError):
        load_json(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{", encoding='utf-8')
    with pytest.raises(InputError):
        load_json(str(broken))
    listing = tmp_path / "list.json"
    listing.write_text("[]", encoding='utf-8')
    with pytest.raises(InputError):
        load_json(str(listing))


def test_references_resolve_relative_to_referencing_file(fixture_path, regular_e1):
    m = load_module(fixture_path("E1-regular-module.json"))
    assert m.same_as(regular_e1)
    f = morphism_from_dict(load_json(fixture_path("E1-scale-e1.json")), base_dir=fixture_path(""))
    assert f.map[1, 1] == 2


def test_embedded_algebra(e1):
    f = functional_from_dict({"algebra": algebra_to_dict(e1), "coeffs": ["0", "1"],
                              "witness": {"ambient_dim": 2, "basis": []}})
    assert f.coeffs == (0, 1)


def test_embedded_module_and_morphisms(fixture_path, regular_e1):
    m = module_from_dict(module_to_dict(regular_e1))
    assert m.same_as(regular_e1)
    f = morphism_from_dict(load_json(fixture_path("E1-scale-e1.json")), base_dir=fixture_path(""))
    g = morphism_from_dict(json.loads(dumps(morphism_to_dict(f))))
    assert g.map == f.map and g.source.same_as(f.source)
    source, target, sigma_t = dual_comodule_morphism(2 * f.map.eye(2), regular_e1, regular_e1)
    h, a, b = comodule_map_from_dict(comodule_map_to_dict(sigma_t, source, target))
    assert h == sigma_t
    assert (a.dim_a, b.dim_a) == (2, 2)


def test_functional_fixtures(fixture_path):
    base = fixture_path("")
    f = functional_from_dict(load_json(fixture_path("E1-e1star.json")), base)
    assert f.witness.subspace.dim == 0
    g = functional_from_dict(load_json(fixture_path("E1-e0star-span-e1.json")), base)
    assert g.witness.subspace == Subspace.span([[0, 1]], 2)
    xi = module_functional_from_dict(load_json(fixture_path("E1-module-e1star.json")), base)
    assert xi.coeffs == (0, 1)


def test_functional_violating_witness_is_contract_error(fixture_path, e1):
    with pytest.raises(ContractError):
        functional_from_dict({"coeffs": ["0", "1"], "witness": {"basis": [["0", "1"]]}}, algebra=e1)


def test_module_map_fixture(fixture_path):
    sigma, source, target = module_map_from_dict(load_json(fixture_path("E1-module-double.json")),
                                                 fixture_path(""))
    assert sigma == 2 * sigma.eye(2)
    assert source.same_as(target)


def test_subspace_codec():
    s = subspace_from_dict({"basis": [["0", "2"], ["0", "1"]]})
    assert s == Subspace.span([[0, 1]], 2)
    assert subspace_to_dict(s) == {"ambient_dim": 2, "basis": [["0", "1"]]}
    with pytest.raises(InputError):
        subspace_from_dict({"basis": []})
    with pytest.raises(InputError):
        subspace_from_dict({"ambient_dim": 3, "basis": []}, ambient_dim=2)


def test_ideal_from_dict_flags_non_ideal(e1):
    assert ideal_from_dict({"basis": [["0", "1"]]}, algebra=e1).is_ideal
    assert not ideal_from_dict({"basis": [["1", "0"]]}, algebra=e1).is_ideal


def test_monomial_ideal_codec():
    assert monomial_ideal_from_dict({"total_degree": 3}, 2) == CofiniteMonomialIdeal.total_degree(3)
    stair = monomial_ideal_from_dict({"staircase": [1, 3]}, 2)
    assert monomial_ideal_to_dict(stair) == {"staircase": [1, 3]}
    with pytest.raises(InputError):
        monomial_ideal_from_dict({"staircase": [1]}, 2)
    with pytest.raises(InputError):
        monomial_ideal_from_dict({}, 2)


def test_dual_functional_codec():
    f = dual_functional_from_dict({"terms": [[[1, 0], "1/2"], [[1, 0], "1/2"], [[0, 2], "0"]]}, 2)
    assert f == DualFunctional.coordinate((1, 0))
    assert dual_functional_to_dict(f) == {"terms": [[[1, 0], "1"]]}
    with pytest.raises(InputError):
        dual_functional_from_dict({"terms": [[[1], "1"]]}, 2)

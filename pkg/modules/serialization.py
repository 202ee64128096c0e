"""
Canonical JSON encoding of structures, maps, subspaces and functionals.

Rationals are written as "p/q" or integer strings, 3-tensors as sorted lists
of nonzero [i, j, k, value] entries, matrices as row-major lists. Output uses
sorted keys and two-space indentation, so parse-then-serialize reproduces a
canonical file byte for byte. Nested structures may be embedded or given as a
file path, resolved relative to the referencing file.
"""

import json
import os
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Rational

from modules.algebra import AlgebraMorphism, FDBiHomAlgebra, IdealHandle, is_ideal
from modules.bihom_modules import (
    FDBiHomComodule, FDBiHomModule, ModuleSweedlerFunctional, module_sweedler_wrap,
)
from modules.coalgebra import CoalgebraMorphism, FDBiHomCoalgebra
from modules.config_loader import get_config
from modules.duality import SweedlerFunctional, sweedler_wrap
from modules.linalg import Matrix, Subspace, empty_tensor, matrix
from modules.poly_family import CofiniteMonomialIdeal, DualFunctional, PolyBiHomAlgebra, multi_index
from utils.errors import InputError
from utils.logger import get_logger
from utils.rationals import format_rational, format_vector, parse_rational, parse_vector

logger = get_logger(__name__)


def dumps(data: Dict[str, Any]) -> str:
    indent = get_config().get('output.indent', 2)
    return json.dumps(data, sort_keys=True, indent=indent, ensure_ascii=False) + "\n"


def write_json(path: str, data: Dict[str, Any]) -> None:
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(data))
    logger.info(f"Wrote {path}")


def load_json(path: str) -> Dict[str, Any]:
    """
    Read a JSON object from disk.

    Raises:
        InputError: If the file is missing or unreadable, not UTF-8 JSON, or not an object
    """
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise InputError(f"{path}: file not found") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    except UnicodeDecodeError as e:
        raise InputError(f"{path}: not UTF-8 text (byte {e.start})") from e
    except OSError as e:
        raise InputError(f"{path}: cannot read file: {e.strerror or e}") from e
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object at top level")
    logger.debug("loaded %s", path)
    return data


def _require(data: Dict[str, Any], key: str, where: str) -> Any:
    if key not in data:
        raise InputError(f"{where}: missing key '{key}'")
    return data[key]


def _count(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InputError(f"{where}: expected a non-negative integer, got {value!r}")
    return value


def _resolve(ref, base_dir: str, where: str) -> Tuple[Dict[str, Any], str]:
    """An embedded object or a path relative to base_dir -> (object, its directory)."""
    if isinstance(ref, dict):
        return ref, base_dir
    if isinstance(ref, str):
        path = os.path.normpath(os.path.join(base_dir, ref))
        return load_json(path), os.path.dirname(path)
    raise InputError(f"{where}: expected an embedded object or a file path")


def parse_matrix(values, rows: int, cols: int, where: str) -> Matrix:
    entries = parse_vector(values, where)
    if len(entries) != rows * cols:
        raise InputError(f"{where}: expected {rows * cols} entries for a {rows} x {cols} matrix, got {len(entries)}")
    return matrix(rows, cols, entries)


def format_matrix(m: Matrix) -> List[str]:
    return format_vector(list(m))


def parse_tensor(entries, shape: Tuple[int, int, int], where: str) -> np.ndarray:
    """Sparse [i, j, k, value] entries -> dense object array; omitted entries are 0."""
    if not isinstance(entries, list):
        raise InputError(f"{where}: expected a list of [i, j, k, value] entries")
    out = empty_tensor(*shape)
    seen = set()
    for pos, entry in enumerate(entries):
        loc = f"{where}[{pos}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise InputError(f"{loc}: expected [i, j, k, value]")
        idx = tuple(entry[:3])
        for axis, (i, bound) in enumerate(zip(idx, shape)):
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < bound:
                raise InputError(f"{loc}: index {i!r} out of range 0..{bound - 1} on axis {axis}")
        if idx in seen:
            raise InputError(f"{loc}: duplicate entry for indices {list(idx)}")
        seen.add(idx)
        out[idx] = parse_rational(entry[3], loc)
    return out


def format_tensor(t: np.ndarray) -> List[list]:
    return [[int(i), int(j), int(k), format_rational(t[i, j, k])]
            for i, j, k in np.ndindex(*t.shape) if t[i, j, k] != 0]


def _labels(data, dim: int, where: str) -> Tuple[str, ...]:
    labels = data.get("basis", [])
    if not isinstance(labels, list) or any(not isinstance(x, str) for x in labels):
        raise InputError(f"{where}: 'basis' must be a list of strings")
    if labels and len(labels) != dim:
        raise InputError(f"{where}: {len(labels)} basis labels for dimension {dim}")
    return tuple(labels)


def algebra_from_dict(data: Dict[str, Any], where: str = "algebra") -> FDBiHomAlgebra:
    n = _count(_require(data, "dim", where), f"{where}.dim")
    mu = parse_tensor(_require(data, "mu", where), (n, n, n), f"{where}.mu")
    alpha = parse_matrix(_require(data, "alpha", where), n, n, f"{where}.alpha")
    beta = parse_matrix(_require(data, "beta", where), n, n, f"{where}.beta")
    return FDBiHomAlgebra(n, _labels(data, n, where), mu, alpha, beta, data.get("name", "algebra"))


def algebra_to_dict(a: FDBiHomAlgebra) -> Dict[str, Any]:
    return {
        "name": a.name,
        "dim": a.dim,
        "basis": list(a.basis_labels),
        "mu": format_tensor(a.mu),
        "alpha": format_matrix(a.alpha),
        "beta": format_matrix(a.beta),
    }


def coalgebra_from_dict(data: Dict[str, Any], where: str = "coalgebra") -> FDBiHomCoalgebra:
    n = _count(_require(data, "dim", where), f"{where}.dim")
    delta = parse_tensor(_require(data, "delta", where), (n, n, n), f"{where}.delta")
    psi = parse_matrix(_require(data, "psi", where), n, n, f"{where}.psi")
    phi = parse_matrix(_require(data, "phi", where), n, n, f"{where}.phi")
    return FDBiHomCoalgebra(n, _labels(data, n, where), delta, psi, phi, data.get("name", "coalgebra"))


def coalgebra_to_dict(c: FDBiHomCoalgebra) -> Dict[str, Any]:
    return {
        "name": c.name,
        "dim": c.dim,
        "basis": list(c.basis_labels),
        "delta": format_tensor(c.delta),
        "psi": format_matrix(c.psi),
        "phi": format_matrix(c.phi),
    }


def load_algebra(ref, base_dir: str = ".", where: str = "algebra") -> FDBiHomAlgebra:
    data, _ = _resolve(ref, base_dir, where)
    return algebra_from_dict(data, ref if isinstance(ref, str) else where)


def load_coalgebra(ref, base_dir: str = ".", where: str = "coalgebra") -> FDBiHomCoalgebra:
    data, _ = _resolve(ref, base_dir, where)
    return coalgebra_from_dict(data, ref if isinstance(ref, str) else where)


def module_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "module") -> FDBiHomModule:
    algebra = load_algebra(_require(data, "algebra", where), base_dir, f"{where}.algebra")
    m = _count(_require(data, "dim_m", where), f"{where}.dim_m")
    rho = parse_tensor(_require(data, "rho", where), (m, algebra.dim, m), f"{where}.rho")
    kappa = parse_matrix(_require(data, "kappa", where), m, m, f"{where}.kappa")
    tau = parse_matrix(_require(data, "tau", where), m, m, f"{where}.tau")
    return FDBiHomModule(algebra, m, rho, kappa, tau, data.get("name", "module"), _labels(data, m, where))


def module_to_dict(m: FDBiHomModule, algebra_ref: Optional[str] = None) -> Dict[str, Any]:
    return {
        "name": m.name,
        "algebra": algebra_ref if algebra_ref is not None else algebra_to_dict(m.algebra),
        "dim_m": m.dim_m,
        "basis": list(m.basis_labels),
        "rho": format_tensor(m.rho),
        "kappa": format_matrix(m.kappa),
        "tau": format_matrix(m.tau),
    }


def comodule_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "comodule") -> FDBiHomComodule:
    coalgebra = load_coalgebra(_require(data, "coalgebra", where), base_dir, f"{where}.coalgebra")
    a = _count(_require(data, "dim_a", where), f"{where}.dim_a")
    gamma = parse_tensor(_require(data, "gamma", where), (a, a, coalgebra.dim), f"{where}.gamma")
    omega = parse_matrix(_require(data, "omega", where), a, a, f"{where}.omega")
    theta = parse_matrix(_require(data, "theta", where), a, a, f"{where}.theta")
    return FDBiHomComodule(coalgebra, a, gamma, omega, theta, data.get("name", "comodule"), _labels(data, a, where))


def comodule_to_dict(c: FDBiHomComodule, coalgebra_ref: Optional[str] = None) -> Dict[str, Any]:
    return {
        "name": c.name,
        "coalgebra": coalgebra_ref if coalgebra_ref is not None else coalgebra_to_dict(c.coalgebra),
        "dim_a": c.dim_a,
        "basis": list(c.basis_labels),
        "gamma": format_tensor(c.gamma),
        "omega": format_matrix(c.omega),
        "theta": format_matrix(c.theta),
    }


def load_module(ref, base_dir: str = ".", where: str = "module") -> FDBiHomModule:
    data, inner = _resolve(ref, base_dir, where)
    return module_from_dict(data, inner, ref if isinstance(ref, str) else where)


def load_comodule(ref, base_dir: str = ".", where: str = "comodule") -> FDBiHomComodule:
    data, inner = _resolve(ref, base_dir, where)
    return comodule_from_dict(data, inner, ref if isinstance(ref, str) else where)


def morphism_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "morphism") -> AlgebraMorphism:
    source = load_algebra(_require(data, "source", where), base_dir, f"{where}.source")
    target = load_algebra(_require(data, "target", where), base_dir, f"{where}.target")
    f = parse_matrix(_require(data, "map", where), target.dim, source.dim, f"{where}.map")
    return AlgebraMorphism(source, target, f)


def morphism_to_dict(f: AlgebraMorphism) -> Dict[str, Any]:
    return {"source": algebra_to_dict(f.source), "target": algebra_to_dict(f.target), "map": format_matrix(f.map)}


def coalgebra_morphism_from_dict(data: Dict[str, Any], base_dir: str = ".",
                                 where: str = "coalgebra morphism") -> CoalgebraMorphism:
    source = load_coalgebra(_require(data, "source", where), base_dir, f"{where}.source")
    target = load_coalgebra(_require(data, "target", where), base_dir, f"{where}.target")
    g = parse_matrix(_require(data, "map", where), target.dim, source.dim, f"{where}.map")
    return CoalgebraMorphism(source, target, g)


def coalgebra_morphism_to_dict(g: CoalgebraMorphism) -> Dict[str, Any]:
    return {"source": coalgebra_to_dict(g.source), "target": coalgebra_to_dict(g.target), "map": format_matrix(g.map)}


def module_map_from_dict(data: Dict[str, Any], base_dir: str = ".",
                         where: str = "module morphism") -> Tuple[Matrix, FDBiHomModule, FDBiHomModule]:
    """Module morphism file: {"source": module, "target": module, "map": row-major}."""
    source = load_module(_require(data, "source", where), base_dir, f"{where}.source")
    target = load_module(_require(data, "target", where), base_dir, f"{where}.target")
    sigma = parse_matrix(_require(data, "map", where), target.dim_m, source.dim_m, f"{where}.map")
    return sigma, source, target


def comodule_map_from_dict(data: Dict[str, Any], base_dir: str = ".",
                           where: str = "comodule morphism") -> Tuple[Matrix, FDBiHomComodule, FDBiHomComodule]:
    source = load_comodule(_require(data, "source", where), base_dir, f"{where}.source")
    target = load_comodule(_require(data, "target", where), base_dir, f"{where}.target")
    f = parse_matrix(_require(data, "map", where), target.dim_a, source.dim_a, f"{where}.map")
    return f, source, target


def comodule_map_to_dict(f: Matrix, source: FDBiHomComodule, target: FDBiHomComodule) -> Dict[str, Any]:
    return {"source": comodule_to_dict(source), "target": comodule_to_dict(target), "map": format_matrix(f)}


def subspace_from_dict(data: Dict[str, Any], ambient_dim: Optional[int] = None,
                       where: str = "subspace") -> Subspace:
    """{"basis": [[...], ...]} with optional "ambient_dim" (required when the basis is empty)."""
    vectors = _require(data, "basis", where)
    if not isinstance(vectors, list):
        raise InputError(f"{where}.basis: expected a list of vectors")
    if "ambient_dim" in data:
        declared = _count(data["ambient_dim"], f"{where}.ambient_dim")
        if ambient_dim is not None and declared != ambient_dim:
            raise InputError(f"{where}: ambient_dim {declared} does not match dimension {ambient_dim}")
        ambient_dim = declared
    if ambient_dim is None:
        if not vectors:
            raise InputError(f"{where}: empty basis needs an explicit ambient_dim")
        ambient_dim = len(vectors[0]) if isinstance(vectors[0], list) else 0
    parsed = [parse_vector(v, f"{where}.basis[{i}]") for i, v in enumerate(vectors)]
    return Subspace.span(parsed, ambient_dim)


def subspace_to_dict(s: Subspace) -> Dict[str, Any]:
    return {"ambient_dim": s.ambient_dim, "basis": [format_vector(v) for v in s.vectors()]}


def ideal_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "ideal",
                    algebra: Optional[FDBiHomAlgebra] = None) -> IdealHandle:
    """Subspace file, optionally carrying its algebra, checked with is_ideal."""
    if algebra is None:
        algebra = load_algebra(_require(data, "algebra", where), base_dir, f"{where}.algebra")
    return is_ideal(algebra, subspace_from_dict(data, algebra.dim, where))


def ideal_to_dict(j: IdealHandle) -> Dict[str, Any]:
    data = subspace_to_dict(j.subspace)
    data["codim"] = j.codim
    data["is_ideal"] = j.is_ideal
    return data


def functional_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "functional",
                         algebra: Optional[FDBiHomAlgebra] = None) -> SweedlerFunctional:
    """{"algebra": ref, "coeffs": [...], "witness": {"basis": [...]}}; wrapped with its annihilation check."""
    if algebra is None:
        algebra = load_algebra(_require(data, "algebra", where), base_dir, f"{where}.algebra")
    coeffs = parse_vector(_require(data, "coeffs", where), f"{where}.coeffs")
    witness = ideal_from_dict(_require(data, "witness", where), base_dir, f"{where}.witness", algebra)
    return sweedler_wrap(algebra, coeffs, witness)


def functional_to_dict(f: SweedlerFunctional, algebra_ref: Optional[str] = None) -> Dict[str, Any]:
    data = {"coeffs": format_vector(f.coeffs), "witness": {"basis": [format_vector(v) for v in f.witness.subspace.vectors()],
                                                        "ambient_dim": f.algebra.dim}}
    if algebra_ref is not None:
        data["algebra"] = algebra_ref
    return data


def module_functional_from_dict(data: Dict[str, Any], base_dir: str = ".", where: str = "module functional",
                                module: Optional[FDBiHomModule] = None) -> ModuleSweedlerFunctional:
    if module is None:
        module = load_module(_require(data, "module", where), base_dir, f"{where}.module")
    coeffs = parse_vector(_require(data, "coeffs", where), f"{where}.coeffs")
    witness = ideal_from_dict(_require(data, "witness", where), base_dir, f"{where}.witness", module.algebra)
    return module_sweedler_wrap(module, coeffs, witness)


def module_functional_to_dict(xi: ModuleSweedlerFunctional, module_ref: Optional[str] = None) -> Dict[str, Any]:
    data = {"coeffs": format_vector(xi.coeffs), "witness": {"basis": [format_vector(v) for v in xi.witness.subspace.vectors()],
                                                         "ambient_dim": xi.module.algebra.dim}}
    if module_ref is not None:
        data["module"] = module_ref
    return data


def pairs_to_list(pairs: Sequence[Tuple], left_key: str = "left", right_key: str = "right") -> List[Dict[str, Any]]:
    return [{left_key: format_vector(l.coeffs), right_key: format_vector(r.coeffs)} for l, r in pairs]


def poly_algebra_from_dict(data: Dict[str, Any], where: str = "poly algebra") -> PolyBiHomAlgebra:
    r = _count(_require(data, "r", where), f"{where}.r")
    a = parse_vector(_require(data, "A", where), f"{where}.A")
    b = parse_vector(_require(data, "B", where), f"{where}.B")
    return PolyBiHomAlgebra.from_rows(r, a, b, data.get("name", "poly"))


def poly_algebra_to_dict(alg: PolyBiHomAlgebra) -> Dict[str, Any]:
    return {
        "name": alg.name,
        "r": alg.r,
        "A": format_matrix(alg.matrix("A")),
        "B": format_matrix(alg.matrix("B")),
    }


def load_poly_algebra(ref, base_dir: str = ".", where: str = "poly algebra") -> PolyBiHomAlgebra:
    data, _ = _resolve(ref, base_dir, where)
    return poly_algebra_from_dict(data, ref if isinstance(ref, str) else where)


def parse_multi_index(values, r: int, where: str = "multi-index") -> Tuple[int, ...]:
    if not isinstance(values, (list, tuple)):
        raise InputError(f"{where}: expected a list of exponents")
    return multi_index(values, r, where)


def monomial_ideal_from_dict(data: Dict[str, Any], r: int, where: str = "monomial ideal") -> CofiniteMonomialIdeal:
    """{"total_degree": d} or {"staircase": [N_1, ..., N_r]}."""
    if "total_degree" in data:
        return CofiniteMonomialIdeal.total_degree(_count(data["total_degree"], f"{where}.total_degree"))
    if "staircase" in data:
        return CofiniteMonomialIdeal.staircase(parse_multi_index(data["staircase"], r, f"{where}.staircase"))
    raise InputError(f"{where}: expected 'total_degree' or 'staircase'")


def monomial_ideal_to_dict(ideal: CofiniteMonomialIdeal) -> Dict[str, Any]:
    if ideal.kind == "total_degree":
        return {"total_degree": ideal.degree}
    return {"staircase": list(ideal.corner)}


def dual_functional_from_dict(data: Dict[str, Any], r: int, where: str = "dual functional") -> DualFunctional:
    """{"terms": [[[exponents], "c"], ...]}."""
    terms = _require(data, "terms", where)
    if not isinstance(terms, list):
        raise InputError(f"{where}.terms: expected a list of [exponents, value] pairs")
    out: Dict[Tuple[int, ...], Rational] = {}
    for i, entry in enumerate(terms):
        loc = f"{where}.terms[{i}]"
        if not isinstance(entry, list) or len(entry) != 2:
            raise InputError(f"{loc}: expected [exponents, value]")
        key = parse_multi_index(entry[0], r, loc)
        out[key] = out.get(key, Rational(0)) + parse_rational(entry[1], loc)
    return DualFunctional.from_dict(out)


def dual_functional_to_dict(f: DualFunctional) -> Dict[str, Any]:
    return {"terms": [[list(k), format_rational(v)] for k, v in f.terms]}

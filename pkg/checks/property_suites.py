"""
Seeded randomized suites over generated instances.

Instances are Yau twists of small associative algebras whose commuting
endomorphisms are known in closed form:
    - truncated polynomial algebras K[x]/(x^n) with x -> a x, x -> b x
    - cyclic group algebras K[C_n] with power maps g -> g^u, g -> g^v
optionally conjugated by a random basis permutation.
"""

from typing import Optional, Tuple

import numpy as np

from checks.report import ValidationReport
from modules.algebra import (
    AlgebraMorphism, FDBiHomAlgebra, identity_morphism, validate_algebra, validate_morphism, yau_twist,
)
from modules.coalgebra import validate_coalgebra, validate_coalgebra_morphism
from modules.config_loader import get_config
from modules.duality import dual_algebra_morphism, dual_coalgebra, pairing_report, tensor_quotient_kernel
from modules.linalg import Matrix, Subspace, bilinear_tensor, diag, kronecker, matrix
from utils.logger import get_logger

logger = get_logger(__name__)


def truncated_polynomial_core(n: int, a: int, b: int) -> Tuple[Matrix, Matrix, Matrix]:
    """K[x]/(x^n) on basis 1, x, .., x^(n-1) with twists diag(a^i), diag(b^i)."""
    entries = [0] * (n * n * n)
    for i in range(n):
        for j in range(n):
            if i + j < n:
                entries[(i + j) * n * n + i * n + j] = 1
    return matrix(n, n * n, entries), diag(*[a ** i for i in range(n)]), diag(*[b ** i for i in range(n)])


def cyclic_group_core(n: int, u: int, v: int) -> Tuple[Matrix, Matrix, Matrix]:
    """K[C_n] on basis g^0..g^(n-1) with power-map twists g -> g^u, g -> g^v."""
    entries = [0] * (n * n * n)
    for i in range(n):
        for j in range(n):
            entries[((i + j) % n) * n * n + i * n + j] = 1

    def power_map(w):
        return Matrix(n, n, lambda row, col: 1 if row == (w * col) % n else 0)

    return matrix(n, n * n, entries), power_map(u), power_map(v)


def permute_core(core: Matrix, alpha: Matrix, beta: Matrix, perm) -> Tuple[Matrix, Matrix, Matrix]:
    """Conjugate a structure by the basis permutation matrix of perm."""
    n = alpha.rows
    p = Matrix(n, n, lambda i, j: 1 if perm[j] == i else 0)
    p_inv = p.T
    return p_inv * core * kronecker(p, p), p_inv * alpha * p, p_inv * beta * p


def random_algebra(rng: np.random.Generator, max_dim: int, entry_range: int,
                   name: str = "random") -> FDBiHomAlgebra:
    """Yau twist of a random truncated-polynomial or cyclic-group core."""
    n = int(rng.integers(1, max_dim + 1))
    if rng.random() < 0.5:
        a = int(rng.integers(-entry_range, entry_range + 1))
        b = int(rng.integers(-entry_range, entry_range + 1))
        core, alpha, beta = truncated_polynomial_core(n, a, b)
        kind = f"K[x]/(x^{n}) a={a} b={b}"
    else:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        core, alpha, beta = cyclic_group_core(n, u, v)
        kind = f"K[C_{n}] u={u} v={v}"
    if rng.random() < 0.5:
        perm = [int(x) for x in rng.permutation(n)]
        core, alpha, beta = permute_core(core, alpha, beta, perm)
        kind += f" perm={perm}"
    logger.debug("random_algebra: %s", kind)
    return yau_twist(bilinear_tensor(core, n, n), alpha, beta, name=f"{name} {kind}")


def random_subspace(rng: np.random.Generator, ambient_dim: int, entry_range: int) -> Subspace:
    count = int(rng.integers(0, ambient_dim + 1))
    vectors = [[int(x) for x in rng.integers(-entry_range, entry_range + 1, size=ambient_dim)]
               for _ in range(count)]
    return Subspace.span(vectors, ambient_dim)


def _settings(suite: str, count: Optional[int], max_dim: Optional[int]):
    settings = get_config().get_suite_settings(suite)
    return (count if count is not None else settings.get('count', 10),
            max_dim if max_dim is not None else settings.get('max_dim', 3),
            settings.get('entry_range', 3))


def yau_suite(seed: int, count: Optional[int] = None, max_dim: Optional[int] = None) -> ValidationReport:
    """
    Random Yau twists: each must validate, its dual coalgebra must validate and
    the pairing identity must hold on all basis triples.
    """
    count, max_dim, entry_range = _settings('yau', count, max_dim)
    rng = np.random.default_rng(seed)
    report = ValidationReport(f"yau suite (seed {seed}, {count} algebras, dim <= {max_dim})")
    failures = {"validate_algebra": None, "validate_coalgebra(dual)": None, "pairing identity": None}
    for index in range(count):
        a = random_algebra(rng, max_dim, entry_range, f"#{index}")
        if not validate_algebra(a).passed:
            failures["validate_algebra"] = failures["validate_algebra"] or {"instance": a.name}
            continue
        c = dual_coalgebra(a)
        if not validate_coalgebra(c).passed:
            failures["validate_coalgebra(dual)"] = failures["validate_coalgebra(dual)"] or {"instance": a.name}
        if not pairing_report(a, c).passed:
            failures["pairing identity"] = failures["pairing identity"] or {"instance": a.name}
    for name, witness in failures.items():
        report.add(name, witness is None, witness)
    return report


def random_map(rng: np.random.Generator, source: FDBiHomAlgebra, target: FDBiHomAlgebra,
               entry_range: int) -> AlgebraMorphism:
    """Zero, identity (when shapes allow) or a random integer matrix."""
    roll = rng.random()
    if roll < 0.2:
        return AlgebraMorphism(source, target, Matrix.zeros(target.dim, source.dim))
    if roll < 0.4:
        return identity_morphism(source)
    entries = [int(x) for x in rng.integers(-entry_range, entry_range + 1, size=target.dim * source.dim)]
    return AlgebraMorphism(source, target, matrix(target.dim, source.dim, entries))


def morphism_duality_suite(seed: int, count: Optional[int] = None,
                           max_dim: Optional[int] = None) -> ValidationReport:
    """validate_morphism(f) and validate_coalgebra_morphism(f*) agree on random maps."""
    count, max_dim, entry_range = _settings('duality', count, max_dim)
    rng = np.random.default_rng(seed)
    report = ValidationReport(f"dual morphism suite (seed {seed}, {count} maps, dim <= {max_dim})")
    disagreement = None
    passed = 0
    for index in range(count):
        source = random_algebra(rng, max_dim, entry_range, f"#{index}s")
        target = source if rng.random() < 0.5 else random_algebra(rng, max_dim, entry_range, f"#{index}t")
        f = random_map(rng, source, target, entry_range)
        verdict = validate_morphism(f).passed
        dual_verdict = validate_coalgebra_morphism(dual_algebra_morphism(f)).passed
        passed += verdict
        if verdict != dual_verdict and disagreement is None:
            disagreement = {"instance": index, "source": source.name, "target": target.name,
                            "morphism": verdict, "dual morphism": dual_verdict}
    report.add("verdicts agree", disagreement is None, disagreement,
               f"{passed} of {count} maps are morphisms")
    return report


def tensor_kernel_suite(seed: int, count: Optional[int] = None,
                        max_dim: Optional[int] = None) -> ValidationReport:
    """ker(pi_A (x) pi_B) = A (x) J + I (x) B on random subspace pairs."""
    count, max_dim, entry_range = _settings('tensor_kernel', count, max_dim)
    rng = np.random.default_rng(seed)
    report = ValidationReport(f"tensor quotient kernel suite (seed {seed}, {count} pairs, dim <= {max_dim})")
    failure = None
    for index in range(count):
        dim_a = int(rng.integers(1, max_dim + 1))
        dim_b = int(rng.integers(1, max_dim + 1))
        i = random_subspace(rng, dim_a, entry_range)
        j = random_subspace(rng, dim_b, entry_range)
        _, check = tensor_quotient_kernel(dim_a, dim_b, i, j)
        if not check.passed and failure is None:
            failure = {"instance": index, "dims": [dim_a, dim_b], "failed": [c.name for c in check.failures()]}
    report.add("kernel identity and dimension count", failure is None, failure)
    return report


SUITES = {
    'yau': yau_suite,
    'duality': morphism_duality_suite,
    'tensor-kernel': tensor_kernel_suite,
}

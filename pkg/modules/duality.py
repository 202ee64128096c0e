"""
Finite duality: the dual BiHom-coalgebra of an algebra, dual morphisms, and
the Sweedler-dual machinery built on witness ideals.

Functionals are coefficient vectors on the dual basis e_i*. A Sweedler
functional carries the ideal J it annihilates; its comultiplication is
computed on the finite quotient G/J and pulled back along the projection,
so every tensor factor again annihilates J.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Rational

from checks.report import ValidationReport, compare_maps, compare_vectors
from modules.algebra import (
    AlgebraMorphism, FDBiHomAlgebra, IdealHandle, intersect_ideals, preimage_ideal,
    require_ideal, validate_algebra, validate_morphism,
)
from modules.coalgebra import CoalgebraMorphism, FDBiHomCoalgebra
from modules.linalg import (
    Matrix, Subspace, column, kernel_basis, kronecker, quotient, subspace_sum, tensor_span,
)
from utils.errors import ContractError, InputError
from utils.logger import get_logger
from utils.rationals import format_vector

logger = get_logger(__name__)

Pair = Tuple["SweedlerFunctional", "SweedlerFunctional"]


def transpose_coalgebra(a: FDBiHomAlgebra) -> FDBiHomCoalgebra:
    """Linear dual of any structure-constant algebra, without checking its axioms."""
    labels = tuple(f"{lbl}*" for lbl in a.basis_labels)
    delta = np.transpose(a.mu, (2, 0, 1))
    return FDBiHomCoalgebra(a.dim, labels, delta, a.beta.T, a.alpha.T, f"{a.name}*")


def dual_coalgebra(a: FDBiHomAlgebra) -> FDBiHomCoalgebra:
    """
    (G*, mu*, beta*, alpha*): delta[k][i][j] = mu[i][j][k], psi = beta^T, phi = alpha^T.

    Raises:
        ContractError: If the algebra does not validate
    """
    report = validate_algebra(a)
    if not report.passed:
        raise ContractError(f"dual_coalgebra: '{a.name}' is not a BiHom-associative algebra", report)
    return transpose_coalgebra(a)


def pairing_report(a: FDBiHomAlgebra, c: FDBiHomCoalgebra) -> ValidationReport:
    """<Delta(f), x (x) y> = <f, xy> for every dual-basis f and basis x, y."""
    report = ValidationReport(f"pairing '{c.name}' / '{a.name}'")
    if c.dim != a.dim:
        raise InputError(f"pairing_report: dimensions differ ({c.dim} vs {a.dim})")
    report.append(compare_maps("pairing identity", c.delta_matrix, a.mu_matrix.T, [c.dim], c.label))
    return report


def dual_algebra_morphism(f: AlgebraMorphism) -> CoalgebraMorphism:
    """
    f* = f^T : dual(target) -> dual(source).

    Works for any linear map between structure-constant algebras, valid or not.
    """
    return CoalgebraMorphism(transpose_coalgebra(f.target), transpose_coalgebra(f.source), f.map.T)


def tensor_quotient_kernel(dim_a: int, dim_b: int, i: Subspace, j: Subspace) -> Tuple[Subspace, ValidationReport]:
    """
    Kernel of pi_A (x) pi_B : A (x) B -> A/I (x) B/J, checked against A (x) J + I (x) B.

    Returns:
        tuple: (kernel subspace of K^(dim_a * dim_b), report with the equality and
        the quotient dimension count)
    """
    if i.ambient_dim != dim_a or j.ambient_dim != dim_b:
        raise InputError(f"tensor_quotient_kernel: subspaces live in dimensions "
                         f"{i.ambient_dim}, {j.ambient_dim}, expected {dim_a}, {dim_b}")
    qa, qb = quotient(i), quotient(j)
    kernel = kernel_basis(kronecker(qa.projection, qb.projection))
    expected = subspace_sum(tensor_span(Subspace.full(dim_a), j), tensor_span(i, Subspace.full(dim_b)))
    report = ValidationReport(f"tensor quotient kernel ({dim_a} x {dim_b})")
    same = kernel == expected
    report.add("kernel equals A(x)J + I(x)B", same,
               None if same else {"kernel dim": kernel.dim, "sum dim": expected.dim})
    quot_dim = dim_a * dim_b - kernel.dim
    report.add("quotient dimension", quot_dim == qa.codim * qb.codim,
               None if quot_dim == qa.codim * qb.codim else
               {"dim": quot_dim, "codim(I) * codim(J)": qa.codim * qb.codim})
    return kernel, report


@dataclass(frozen=True, eq=False)
class SweedlerFunctional:
    """Functional on an algebra together with the ideal it annihilates."""
    algebra: FDBiHomAlgebra
    coeffs: Tuple[Rational, ...]
    witness: IdealHandle

    def __post_init__(self):
        coeffs = tuple(Rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.algebra.dim:
            raise InputError(f"functional: {len(coeffs)} coefficients for dimension {self.algebra.dim}")

    def pair(self, v: Sequence) -> Rational:
        return sum((c * Rational(x) for c, x in zip(self.coeffs, v)), Rational(0))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _violation(coeffs: Sequence, s: Subspace):
    for v in s.vectors():
        value = sum((Rational(c) * x for c, x in zip(coeffs, v)), Rational(0))
        if value != 0:
            return v, value
    return None


def sweedler_wrap(a: FDBiHomAlgebra, coeffs: Sequence, j: IdealHandle) -> SweedlerFunctional:
    """
    Wrap a functional with its witness ideal after checking f(J) = 0.

    Raises:
        InputError: If the ideal or the coefficient vector belongs elsewhere
        ContractError: If j is not a verified ideal or the functional does not
            vanish on it; the message names the offending basis vector
    """
    if not j.algebra.same_as(a):
        raise InputError("sweedler_wrap: witness ideal belongs to another algebra")
    require_ideal(j, "sweedler_wrap")
    coeffs = [Rational(c) for c in coeffs]
    if len(coeffs) != a.dim:
        raise InputError(f"sweedler_wrap: {len(coeffs)} coefficients for dimension {a.dim}")
    bad = _violation(coeffs, j.subspace)
    if bad is not None:
        v, value = bad
        report = ValidationReport("witness annihilation")
        report.add("functional vanishes on witness", False,
                   {"basis vector": format_vector(v), "value": str(value)})
        raise ContractError(f"sweedler_wrap: functional takes value {value} on witness basis vector "
                            f"{format_vector(v)}", report)
    return SweedlerFunctional(a, tuple(coeffs), j)


def sweedler_add(f: SweedlerFunctional, g: SweedlerFunctional) -> SweedlerFunctional:
    """f + g with witness J cap H."""
    if not f.algebra.same_as(g.algebra):
        raise InputError("sweedler_add: functionals live on different algebras")
    witness = intersect_ideals(f.witness, g.witness)
    return sweedler_wrap(f.algebra, [x + y for x, y in zip(f.coeffs, g.coeffs)], witness)


def sweedler_scale(f: SweedlerFunctional, scalar) -> SweedlerFunctional:
    scalar = Rational(scalar)
    return sweedler_wrap(f.algebra, [scalar * c for c in f.coeffs], f.witness)


def _require_valid(f: SweedlerFunctional, op: str) -> None:
    require_ideal(f.witness, op)
    bad = _violation(f.coeffs, f.witness.subspace)
    if bad is not None:
        raise ContractError(f"{op}: functional does not vanish on its witness "
                            f"(basis vector {format_vector(bad[0])})")


def sweedler_delta(f: SweedlerFunctional) -> List[Pair]:
    """
    Delta(f) = f o mu as a list of rank-1 pairs.

    f o mu vanishes on G (x) J + J (x) G, so it factors through (G/J) (x) (G/J);
    its coordinates k_ij there are f(s_i s_j) for section representatives
    s_i, and each factor e_i* o pi keeps J as witness.

    Raises:
        ContractError: If f is not annihilated by a verified witness ideal, or
            f o mu does not vanish on the tensor quotient kernel
    """
    _require_valid(f, "sweedler_delta")
    a, j = f.algebra, f.witness
    n = a.dim
    q = quotient(j.subspace)
    row = Matrix(1, n, list(f.coeffs)) * a.mu_matrix
    kernel, report = tensor_quotient_kernel(n, n, j.subspace, j.subspace)
    if not report.passed:
        raise ContractError("sweedler_delta: tensor quotient kernel mismatch", report)
    for v in kernel.vectors():
        if (row * column(v))[0] != 0:
            raise ContractError(f"sweedler_delta: f o mu does not vanish on {format_vector(v)} "
                                f"in G(x)J + J(x)G")
    k = row * kronecker(q.section, q.section)
    pairs: List[Pair] = []
    codim = q.codim
    for i in range(codim):
        for jj in range(codim):
            coeff = k[0, i * codim + jj]
            if coeff == 0:
                continue
            left = sweedler_wrap(a, [coeff * x for x in q.projection.row(i)], j)
            right = sweedler_wrap(a, list(q.projection.row(jj)), j)
            pairs.append((left, right))
    logger.debug("sweedler_delta: quotient dim %d, %d rank-1 terms", codim, len(pairs))
    return pairs


def delta_tensor(pairs: Sequence[Tuple], dim: int) -> Matrix:
    """Canonical dim x dim coefficient matrix T[i, j] of sum left (x) right."""
    total = Matrix.zeros(dim, dim)
    for left, right in pairs:
        total = total + Matrix(dim, 1, list(left.coeffs)) * Matrix(1, dim, list(right.coeffs))
    return Matrix(total)


def delta_pairing_report(f: SweedlerFunctional, pairs: Sequence[Pair]) -> ValidationReport:
    """sum <left, x><right, y> = <f, xy> over all basis pairs (x, y)."""
    a = f.algebra
    n = a.dim
    report = ValidationReport("comultiplication pairing")
    lhs = list(delta_tensor(pairs, n))
    rhs = list(Matrix(1, n, list(f.coeffs)) * a.mu_matrix)
    report.append(compare_vectors("pairing identity", lhs, rhs))
    return report


def sweedler_twist(f: SweedlerFunctional, which: str) -> SweedlerFunctional:
    """alpha°(f) = f o alpha or beta°(f) = f o beta; the witness is unchanged."""
    if which not in ("alpha", "beta"):
        raise InputError(f"sweedler_twist: unknown twist {which!r}")
    _require_valid(f, "sweedler_twist")
    twist = f.algebra.alpha if which == "alpha" else f.algebra.beta
    coeffs = list(twist.T * column(f.coeffs))
    return sweedler_wrap(f.algebra, coeffs, f.witness)


def sweedler_dual_morphism(f: AlgebraMorphism, b: SweedlerFunctional) -> SweedlerFunctional:
    """
    f°(b) = b o f with witness f^{-1}(J).

    Raises:
        ContractError: If f does not validate or b is not a valid functional
    """
    if not b.algebra.same_as(f.target):
        raise InputError("sweedler_dual_morphism: functional does not live on the target algebra")
    report = validate_morphism(f)
    if not report.passed:
        raise ContractError("sweedler_dual_morphism: map is not a BiHom-algebra morphism", report)
    _require_valid(b, "sweedler_dual_morphism")
    witness = preimage_ideal(f, b.witness)
    coeffs = list(f.map.T * column(b.coeffs))
    return sweedler_wrap(f.source, coeffs, witness)


def dual_morphism_compatibility(f: AlgebraMorphism, b: SweedlerFunctional) -> ValidationReport:
    """
    Exact check that f° is a coalgebra map at b: Delta(f°b) = (f° (x) f°) Delta'(b),
    f°(alpha'° b) = alpha°(f° b) and f°(beta'° b) = beta°(f° b).
    """
    report = ValidationReport(f"dual morphism {f.target.name}° -> {f.source.name}°")
    image = sweedler_dual_morphism(f, b)
    n = f.source.dim
    lhs = list(delta_tensor(sweedler_delta(image), n))
    target_delta = delta_tensor(sweedler_delta(b), f.target.dim)
    rhs = list(f.map.T * target_delta * f.map)
    report.append(compare_vectors("comultiplicativity", lhs, rhs))
    for which in ("alpha", "beta"):
        before = sweedler_dual_morphism(f, sweedler_twist(b, which)).coeffs
        after = sweedler_twist(image, which).coeffs
        report.append(compare_vectors(f"{which} intertwining", before, after))
    return report

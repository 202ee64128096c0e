"""
Right BiHom-modules and comodules, their finite duals and the Sweedler dual
of a module.

A right module over (G, mu, alpha, beta) is (M, rho, kappa, tau) with
rho(m_p (x) e_j) = sum_q rho[p][j][q] m_q. Its dual M* is a right comodule
over G* with gamma = rho^T, omega = tau^T, theta = kappa^T.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np
from sympy import Rational

from checks.report import ValidationReport, compare_maps, compare_vectors
from modules.algebra import (
    FDBiHomAlgebra, IdealHandle, default_labels, intersect_ideals, is_ideal, require_ideal,
    twist_commutation, validate_algebra,
)
from modules.coalgebra import FDBiHomCoalgebra
from modules.duality import SweedlerFunctional, dual_coalgebra, sweedler_wrap, tensor_quotient_kernel
from modules.linalg import (
    Matrix, Subspace, bilinear_matrix, colinear_matrix, column, frozen_tensor, identity, kronecker,
    quotient, rank,
)
from utils.errors import ContractError, InputError, PreconditionError
from utils.logger import get_logger
from utils.rationals import format_vector

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class FDBiHomModule:
    """Action constants rho[p][j][q] plus twists kappa, tau on M."""
    algebra: FDBiHomAlgebra
    dim_m: int
    rho: np.ndarray
    kappa: Matrix
    tau: Matrix
    name: str = "module"
    basis_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        m, n = self.dim_m, self.algebra.dim
        object.__setattr__(self, "rho", frozen_tensor(self.rho, (m, n, m), "rho"))
        object.__setattr__(self, "kappa", Matrix(self.kappa))
        object.__setattr__(self, "tau", Matrix(self.tau))
        labels = tuple(self.basis_labels) if self.basis_labels else default_labels(m, "m")
        object.__setattr__(self, "basis_labels", labels)
        if len(labels) != m:
            raise InputError(f"{self.name}: {len(labels)} basis labels for dimension {m}")
        for twist in ("kappa", "tau"):
            shape = getattr(self, twist).shape
            if shape != (m, m):
                raise InputError(f"{self.name}: {twist} has shape {shape}, expected ({m}, {m})")

    @cached_property
    def rho_matrix(self) -> Matrix:
        """dim_m x (dim_m * dim G) matrix of the action."""
        return bilinear_matrix(self.rho)

    def act(self, m: Sequence, g: Sequence) -> List[Rational]:
        return list(self.rho_matrix * kronecker(column(m), column(g)))

    def label(self, indices: Sequence[int]) -> List[str]:
        out = [self.basis_labels[indices[0]]]
        return out + [self.algebra.basis_labels[i] for i in indices[1:]]

    def same_as(self, other: "FDBiHomModule") -> bool:
        if other is self:
            return True
        return (self.algebra.same_as(other.algebra) and self.dim_m == other.dim_m
                and self.rho_matrix == other.rho_matrix
                and self.kappa == other.kappa and self.tau == other.tau)


@dataclass(frozen=True, eq=False)
class FDBiHomComodule:
    """Coaction constants gamma[p][q][k]: gamma(a_p) = sum gamma[p][q][k] a_q (x) c_k."""
    coalgebra: FDBiHomCoalgebra
    dim_a: int
    gamma: np.ndarray
    omega: Matrix
    theta: Matrix
    name: str = "comodule"
    basis_labels: Tuple[str, ...] = ()

    def __post_init__(self):
        a, n = self.dim_a, self.coalgebra.dim
        object.__setattr__(self, "gamma", frozen_tensor(self.gamma, (a, a, n), "gamma"))
        object.__setattr__(self, "omega", Matrix(self.omega))
        object.__setattr__(self, "theta", Matrix(self.theta))
        labels = tuple(self.basis_labels) if self.basis_labels else default_labels(a, "a")
        object.__setattr__(self, "basis_labels", labels)
        if len(labels) != a:
            raise InputError(f"{self.name}: {len(labels)} basis labels for dimension {a}")
        for twist in ("omega", "theta"):
            shape = getattr(self, twist).shape
            if shape != (a, a):
                raise InputError(f"{self.name}: {twist} has shape {shape}, expected ({a}, {a})")

    @cached_property
    def gamma_matrix(self) -> Matrix:
        """(dim_a * dim C) x dim_a matrix of the coaction."""
        return colinear_matrix(self.gamma)

    def label(self, indices: Sequence[int]) -> List[str]:
        return [self.basis_labels[i] for i in indices]


def regular_module(a: FDBiHomAlgebra) -> FDBiHomModule:
    """G acting on itself: rho = mu, kappa = alpha, tau = beta."""
    return FDBiHomModule(a, a.dim, a.mu, a.alpha, a.beta, f"regular {a.name}", a.basis_labels)


def validate_module(m: FDBiHomModule) -> ValidationReport:
    """
    kappa tau = tau kappa, rho o (rho (x) beta) = rho o (kappa (x) mu),
    rho o (kappa (x) alpha) = kappa o rho and rho o (tau (x) beta) = tau o rho.
    """
    a = m.algebra
    r = m.rho_matrix
    dims = [m.dim_m, a.dim]
    report = ValidationReport(f"module '{m.name}'")
    report.append(twist_commutation(m.kappa, m.tau))
    report.append(compare_maps("BiHom-associativity of the action",
                               r * kronecker(r, a.beta), r * kronecker(m.kappa, a.mu_matrix),
                               dims + [a.dim], m.label))
    report.append(compare_maps("kappa-multiplicativity",
                               r * kronecker(m.kappa, a.alpha), m.kappa * r, dims, m.label))
    report.append(compare_maps("tau-multiplicativity",
                               r * kronecker(m.tau, a.beta), m.tau * r, dims, m.label))
    return report


def validate_comodule(c: FDBiHomComodule) -> ValidationReport:
    """
    omega theta = theta omega, (gamma (x) psi) gamma = (theta (x) Delta) gamma,
    (omega (x) psi) gamma = gamma omega and (theta (x) phi) gamma = gamma theta.
    """
    co = c.coalgebra
    g = c.gamma_matrix
    report = ValidationReport(f"comodule '{c.name}'")
    report.append(twist_commutation(c.omega, c.theta))
    report.append(compare_maps("BiHom-coassociativity of the coaction",
                               kronecker(g, co.psi) * g, kronecker(c.theta, co.delta_matrix) * g,
                               [c.dim_a], c.label))
    report.append(compare_maps("omega-comultiplicativity",
                               kronecker(c.omega, co.psi) * g, g * c.omega, [c.dim_a], c.label))
    report.append(compare_maps("theta-comultiplicativity",
                               kronecker(c.theta, co.phi) * g, g * c.theta, [c.dim_a], c.label))
    return report


def _check_map_shape(sigma: Matrix, rows: int, cols: int, op: str) -> Matrix:
    sigma = Matrix(sigma)
    if sigma.shape != (rows, cols):
        raise InputError(f"{op}: map has shape {sigma.shape}, expected ({rows}, {cols})")
    return sigma


def validate_module_morphism(sigma: Matrix, m: FDBiHomModule, n: FDBiHomModule) -> ValidationReport:
    """sigma o rho = rho~ o (sigma (x) Id), kappa~ sigma = sigma kappa, tau~ sigma = sigma tau."""
    if not m.algebra.same_as(n.algebra):
        raise InputError("validate_module_morphism: modules over different algebras")
    sigma = _check_map_shape(sigma, n.dim_m, m.dim_m, "validate_module_morphism")
    dim_g = m.algebra.dim
    report = ValidationReport(f"module morphism {m.name} -> {n.name}")
    report.append(compare_maps("action compatibility", sigma * m.rho_matrix,
                               n.rho_matrix * kronecker(sigma, identity(dim_g)),
                               [m.dim_m, dim_g], m.label))
    report.append(compare_maps("kappa intertwining", n.kappa * sigma, sigma * m.kappa, [m.dim_m]))
    report.append(compare_maps("tau intertwining", n.tau * sigma, sigma * m.tau, [m.dim_m]))
    return report


def validate_comodule_morphism(f: Matrix, a: FDBiHomComodule, b: FDBiHomComodule) -> ValidationReport:
    """gamma' o f = (f (x) Id) o gamma, omega' f = f omega, theta' f = f theta."""
    if not a.coalgebra.same_as(b.coalgebra):
        raise InputError("validate_comodule_morphism: comodules over different coalgebras")
    f = _check_map_shape(f, b.dim_a, a.dim_a, "validate_comodule_morphism")
    report = ValidationReport(f"comodule morphism {a.name} -> {b.name}")
    report.append(compare_maps("coaction compatibility", b.gamma_matrix * f,
                               kronecker(f, identity(a.coalgebra.dim)) * a.gamma_matrix,
                               [a.dim_a], a.label))
    report.append(compare_maps("omega intertwining", b.omega * f, f * a.omega, [a.dim_a], a.label))
    report.append(compare_maps("theta intertwining", b.theta * f, f * a.theta, [a.dim_a], a.label))
    return report


def dual_comodule(m: FDBiHomModule) -> FDBiHomComodule:
    """
    (M*, rho*, tau*, kappa*) over dual_coalgebra(G).

    Raises:
        ContractError: If the algebra or the module does not validate
    """
    report = validate_module(m)
    if not report.passed:
        raise ContractError(f"dual_comodule: '{m.name}' is not a right BiHom-module", report)
    coalgebra = dual_coalgebra(m.algebra)
    gamma = np.transpose(m.rho, (2, 0, 1))
    labels = tuple(f"{lbl}*" for lbl in m.basis_labels)
    return FDBiHomComodule(coalgebra, m.dim_m, gamma, m.tau.T, m.kappa.T, f"{m.name}*", labels)


def comodule_pairing_report(m: FDBiHomModule, c: FDBiHomComodule) -> ValidationReport:
    """<gamma(xi), m (x) g> = <xi, rho(m (x) g)> on all basis triples."""
    report = ValidationReport(f"pairing '{c.name}' / '{m.name}'")
    report.append(compare_maps("pairing identity", c.gamma_matrix, m.rho_matrix.T, [c.dim_a], c.label))
    return report


def dual_comodule_morphism(sigma: Matrix, m: FDBiHomModule,
                           n: FDBiHomModule) -> Tuple[FDBiHomComodule, FDBiHomComodule, Matrix]:
    """sigma* : N* -> M* as (source comodule, target comodule, matrix sigma^T)."""
    sigma = _check_map_shape(sigma, n.dim_m, m.dim_m, "dual_comodule_morphism")
    return dual_comodule(n), dual_comodule(m), sigma.T


def product_submodule(m: FDBiHomModule, j: IdealHandle) -> Subspace:
    """
    M.J: span of rho(m_p (x) v) over basis m_p of M and basis v of J.

    Raises:
        ContractError: If j is not a verified ideal, or M.J is not stable
            under kappa and tau
    """
    if not j.algebra.same_as(m.algebra):
        raise InputError("product_submodule: ideal belongs to another algebra")
    require_ideal(j, "product_submodule")
    vectors = []
    for p in range(m.dim_m):
        e = [1 if i == p else 0 for i in range(m.dim_m)]
        for v in j.subspace.vectors():
            vectors.append(m.act(e, v))
    s = Subspace.span(vectors, m.dim_m)
    report = ValidationReport(f"product submodule of '{m.name}'")
    for twist in ("kappa", "tau"):
        image = s.image(getattr(m, twist))
        report.add(f"{twist} stability", s.contains_subspace(image))
    if not report.passed:
        raise ContractError("product_submodule: M.J is not twist-stable", report)
    logger.debug("product_submodule: dim %d in %d", s.dim, m.dim_m)
    return s


@dataclass(frozen=True, eq=False)
class ModuleSweedlerFunctional:
    """Functional on M vanishing on M.J for the witness ideal J of the algebra."""
    module: FDBiHomModule
    coeffs: Tuple[Rational, ...]
    witness: IdealHandle

    def __post_init__(self):
        coeffs = tuple(Rational(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) != self.module.dim_m:
            raise InputError(f"module functional: {len(coeffs)} coefficients for dimension {self.module.dim_m}")

    def pair(self, v: Sequence) -> Rational:
        return sum((c * Rational(x) for c, x in zip(self.coeffs, v)), Rational(0))


def module_sweedler_wrap(m: FDBiHomModule, coeffs: Sequence, j: IdealHandle) -> ModuleSweedlerFunctional:
    """
    Wrap a functional on M after checking that it vanishes on M.J.

    Raises:
        ContractError: If j is not a verified ideal or a basis vector of M.J is
            not annihilated
    """
    coeffs = [Rational(c) for c in coeffs]
    if len(coeffs) != m.dim_m:
        raise InputError(f"module_sweedler_wrap: {len(coeffs)} coefficients for dimension {m.dim_m}")
    mj = product_submodule(m, j)
    for v in mj.vectors():
        value = sum((c * x for c, x in zip(coeffs, v)), Rational(0))
        if value != 0:
            report = ValidationReport("witness annihilation")
            report.add("functional vanishes on M.J", False,
                       {"basis vector": format_vector(v), "value": str(value)})
            raise ContractError(f"module_sweedler_wrap: functional takes value {value} on M.J basis "
                                f"vector {format_vector(v)}", report)
    return ModuleSweedlerFunctional(m, tuple(coeffs), j)


def module_sweedler_add(xi: ModuleSweedlerFunctional, eta: ModuleSweedlerFunctional) -> ModuleSweedlerFunctional:
    """xi + eta with witness I cap J; annihilation of M.(I cap J) is re-checked."""
    if not xi.module.same_as(eta.module):
        raise InputError("module_sweedler_add: functionals live on different modules")
    witness = intersect_ideals(xi.witness, eta.witness)
    return module_sweedler_wrap(xi.module, [x + y for x, y in zip(xi.coeffs, eta.coeffs)], witness)


def module_sweedler_scale(xi: ModuleSweedlerFunctional, scalar) -> ModuleSweedlerFunctional:
    scalar = Rational(scalar)
    return module_sweedler_wrap(xi.module, [scalar * c for c in xi.coeffs], xi.witness)


def module_sweedler_twist(xi: ModuleSweedlerFunctional, which: str) -> ModuleSweedlerFunctional:
    """kappa°(xi) = xi o kappa or tau°(xi) = xi o tau, same witness."""
    if which not in ("kappa", "tau"):
        raise InputError(f"module_sweedler_twist: unknown twist {which!r}")
    twist = getattr(xi.module, which)
    return module_sweedler_wrap(xi.module, list(twist.T * column(xi.coeffs)), xi.witness)


def require_surjective_beta(a: FDBiHomAlgebra, op: str) -> None:
    r = rank(a.beta)
    if r != a.dim:
        raise PreconditionError(
            f"{op}: beta of '{a.name}' is not surjective (rank {r} < {a.dim}); the coaction on the "
            f"Sweedler dual of a module requires a surjective twisting map beta")


def module_sweedler_coaction(xi: ModuleSweedlerFunctional) -> List[Tuple[ModuleSweedlerFunctional, SweedlerFunctional]]:
    """
    rho°(xi) = xi o rho as rank-1 pairs (functional on M, functional on G).

    xi o rho vanishes on M.J (x) G + M (x) J, so it factors through
    (M/M.J) (x) (G/J). Left factors annihilate M.J, right factors annihilate J.

    Raises:
        PreconditionError: If beta is not surjective
        ContractError: If the witness is invalid or xi o rho does not vanish
            on the tensor quotient kernel
    """
    m, j = xi.module, xi.witness
    a = m.algebra
    require_surjective_beta(a, "module_sweedler_coaction")
    check = validate_algebra(a)
    if not check.passed:
        raise ContractError("module_sweedler_coaction: base algebra does not validate", check)
    mj = product_submodule(m, j)
    q_m, q_g = quotient(mj), quotient(j.subspace)
    row = Matrix(1, m.dim_m, list(xi.coeffs)) * m.rho_matrix
    kernel, report = tensor_quotient_kernel(m.dim_m, a.dim, mj, j.subspace)
    if not report.passed:
        raise ContractError("module_sweedler_coaction: tensor quotient kernel mismatch", report)
    for v in kernel.vectors():
        if (row * column(v))[0] != 0:
            raise ContractError(f"module_sweedler_coaction: xi o rho does not vanish on "
                                f"{format_vector(v)} in M.J(x)G + M(x)J")
    k = row * kronecker(q_m.section, q_g.section)
    pairs = []
    for i in range(q_m.codim):
        for jj in range(q_g.codim):
            coeff = k[0, i * q_g.codim + jj]
            if coeff == 0:
                continue
            left = module_sweedler_wrap(m, [coeff * x for x in q_m.projection.row(i)], j)
            right = sweedler_wrap(a, list(q_g.projection.row(jj)), j)
            pairs.append((left, right))
    logger.debug("module_sweedler_coaction: %d x %d quotient, %d terms", q_m.codim, q_g.codim, len(pairs))
    return pairs


def coaction_tensor(pairs: Sequence[Tuple], dim_m: int, dim_g: int) -> Matrix:
    """Canonical dim_m x dim_g matrix T[p, j] of sum left (x) right."""
    total = Matrix.zeros(dim_m, dim_g)
    for left, right in pairs:
        total = total + Matrix(dim_m, 1, list(left.coeffs)) * Matrix(1, dim_g, list(right.coeffs))
    return Matrix(total)


def coaction_pairing_report(xi: ModuleSweedlerFunctional, pairs: Sequence[Tuple]) -> ValidationReport:
    """sum <left, m><right, g> = <xi, rho(m (x) g)> on all basis pairs."""
    m = xi.module
    report = ValidationReport("coaction pairing")
    lhs = list(coaction_tensor(pairs, m.dim_m, m.algebra.dim))
    rhs = list(Matrix(1, m.dim_m, list(xi.coeffs)) * m.rho_matrix)
    report.append(compare_vectors("pairing identity", lhs, rhs))
    return report


def dual_module_morphism(sigma: Matrix, m: FDBiHomModule, n: FDBiHomModule,
                         xi: ModuleSweedlerFunctional) -> ModuleSweedlerFunctional:
    """
    sigma°(xi) = xi o sigma on M.

    The witness stays the ideal of xi; the zero map sends every functional to
    zero, which is certified by the full ideal.

    Raises:
        PreconditionError: If beta is not surjective
        ContractError: If sigma is not a module morphism or xi is invalid
    """
    if not xi.module.same_as(n):
        raise InputError("dual_module_morphism: functional does not live on the target module")
    require_surjective_beta(m.algebra, "dual_module_morphism")
    report = validate_module_morphism(sigma, m, n)
    if not report.passed:
        raise ContractError("dual_module_morphism: map is not a BiHom-module morphism", report)
    module_sweedler_wrap(n, xi.coeffs, xi.witness)
    sigma = Matrix(sigma)
    coeffs = list(sigma.T * column(xi.coeffs))
    witness = xi.witness
    if all(x == 0 for x in sigma):
        witness = is_ideal(m.algebra, Subspace.full(m.algebra.dim))
    return module_sweedler_wrap(m, coeffs, witness)


def dual_module_morphism_compatibility(sigma: Matrix, m: FDBiHomModule, n: FDBiHomModule,
                                       xi: ModuleSweedlerFunctional) -> ValidationReport:
    """(sigma° (x) Id) o rho'° = rho° o sigma° evaluated at xi, compared as tensors."""
    report = ValidationReport(f"dual module morphism {n.name}° -> {m.name}°")
    image = dual_module_morphism(sigma, m, n, xi)
    dim_g = m.algebra.dim
    lhs = list(coaction_tensor(module_sweedler_coaction(image), m.dim_m, dim_g))
    rhs = list(Matrix(sigma).T * coaction_tensor(module_sweedler_coaction(xi), n.dim_m, dim_g))
    report.append(compare_vectors("coaction compatibility", lhs, rhs))
    return report

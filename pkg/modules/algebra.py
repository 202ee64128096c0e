"""
Finite-dimensional BiHom-associative algebras given by structure constants.

An algebra is (G, mu, alpha, beta) with mu(e_i (x) e_j) = sum_k c[i][j][k] e_k and
two commuting twists. Construction never validates; validate_algebra returns a
report so that mutants and other invalid instances stay representable.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

import numpy as np
from sympy import Rational

from checks.report import CheckResult, ValidationReport, compare_maps
from modules.linalg import (
    Matrix, Subspace, bilinear_matrix, bilinear_tensor, column, frozen_tensor,
    identity, kernel_basis, kronecker, quotient, rank, intersect,
)
from utils.errors import ContractError, InputError, PreconditionError
from utils.logger import get_logger
from utils.rationals import format_vector

logger = get_logger(__name__)


def default_labels(dim: int, prefix: str = "e") -> Tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(dim))


@dataclass(frozen=True, eq=False)
class FDBiHomAlgebra:
    """
    Structure constants mu[i][j][k] plus twist matrices alpha, beta (dim x dim).

    mu is stored as a read-only numpy object array of Rationals.
    """
    dim: int
    basis_labels: Tuple[str, ...]
    mu: np.ndarray
    alpha: Matrix
    beta: Matrix
    name: str = "algebra"

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "mu", frozen_tensor(self.mu, (n, n, n), "mu"))
        object.__setattr__(self, "alpha", Matrix(self.alpha))
        object.__setattr__(self, "beta", Matrix(self.beta))
        labels = tuple(self.basis_labels) if self.basis_labels else default_labels(n)
        object.__setattr__(self, "basis_labels", labels)
        if len(labels) != n:
            raise InputError(f"{self.name}: {len(labels)} basis labels for dimension {n}")
        for twist in ("alpha", "beta"):
            shape = getattr(self, twist).shape
            if shape != (n, n):
                raise InputError(f"{self.name}: {twist} has shape {shape}, expected ({n}, {n})")

    @cached_property
    def mu_matrix(self) -> Matrix:
        """dim x dim^2 matrix of mu on the lexicographic tensor basis."""
        return bilinear_matrix(self.mu)

    def product(self, x: Sequence, y: Sequence) -> List[Rational]:
        return list(self.mu_matrix * kronecker(column(x), column(y)))

    def basis_vector(self, i: int) -> List[Rational]:
        return [Rational(1) if k == i else Rational(0) for k in range(self.dim)]

    def label(self, indices: Sequence[int]) -> List[str]:
        return [self.basis_labels[i] for i in indices]

    def same_as(self, other: "FDBiHomAlgebra") -> bool:
        """Structural identity: same dimension, multiplication and twists."""
        if other is self:
            return True
        return (self.dim == other.dim and self.mu_matrix == other.mu_matrix
                and self.alpha == other.alpha and self.beta == other.beta)

    def with_mu(self, mu, name: Optional[str] = None) -> "FDBiHomAlgebra":
        return FDBiHomAlgebra(self.dim, self.basis_labels, mu, self.alpha, self.beta, name or self.name)

    def with_twists(self, alpha: Matrix, beta: Matrix, name: Optional[str] = None) -> "FDBiHomAlgebra":
        return FDBiHomAlgebra(self.dim, self.basis_labels, self.mu, alpha, beta, name or self.name)

    @classmethod
    def from_matrix(cls, mu_matrix: Matrix, alpha: Matrix, beta: Matrix,
                    basis_labels: Sequence[str] = (), name: str = "algebra") -> "FDBiHomAlgebra":
        n = mu_matrix.rows
        return cls(n, tuple(basis_labels), bilinear_tensor(mu_matrix, n, n), alpha, beta, name)


@dataclass(frozen=True, eq=False)
class AlgebraMorphism:
    """Linear map source -> target given by a target.dim x source.dim matrix."""
    source: FDBiHomAlgebra
    target: FDBiHomAlgebra
    map: Matrix

    def __post_init__(self):
        object.__setattr__(self, "map", Matrix(self.map))
        expected = (self.target.dim, self.source.dim)
        if self.map.shape != expected:
            raise InputError(f"morphism: map has shape {self.map.shape}, expected {expected}")


@dataclass(frozen=True, eq=False)
class IdealHandle:
    """
    Subspace of an algebra together with the outcome of is_ideal.

    The flags are only ever set by is_ideal; codim = dim - dim(subspace).
    """
    algebra: FDBiHomAlgebra
    subspace: Subspace
    twist_closed: bool
    absorbing: bool
    codim: int
    report: ValidationReport = field(default=None, repr=False)

    @property
    def is_ideal(self) -> bool:
        return self.twist_closed and self.absorbing


def twist_commutation(alpha: Matrix, beta: Matrix, name: str = "twist commutation") -> CheckResult:
    return compare_maps(name, alpha * beta, beta * alpha, [alpha.cols])


def validate_algebra(a: FDBiHomAlgebra) -> ValidationReport:
    """
    Check twist commutation, BiHom-associativity alpha(g)(hk) = (gh)beta(k) and
    multiplicativity of alpha and beta, exhaustively on the basis.
    """
    n = a.dim
    mu = a.mu_matrix
    report = ValidationReport(f"algebra '{a.name}'")
    report.append(twist_commutation(a.alpha, a.beta))
    report.append(compare_maps("BiHom-associativity",
                               mu * kronecker(a.alpha, mu), mu * kronecker(mu, a.beta),
                               [n, n, n], a.label))
    report.append(compare_maps("alpha-multiplicativity",
                               a.alpha * mu, mu * kronecker(a.alpha, a.alpha), [n, n], a.label))
    report.append(compare_maps("beta-multiplicativity",
                               a.beta * mu, mu * kronecker(a.beta, a.beta), [n, n], a.label))
    logger.debug("validate_algebra %s: %s", a.name, "pass" if report.passed else "fail")
    return report


def validate_associative_core(mu_matrix: Matrix, alpha: Matrix, beta: Matrix) -> ValidationReport:
    """Preconditions of yau_twist: mu associative, alpha and beta commuting endomorphisms of it."""
    n = mu_matrix.rows
    one = identity(n)
    report = ValidationReport("associative core")
    report.append(compare_maps("core associativity",
                               mu_matrix * kronecker(mu_matrix, one), mu_matrix * kronecker(one, mu_matrix),
                               [n, n, n]))
    report.append(compare_maps("alpha is an endomorphism",
                               alpha * mu_matrix, mu_matrix * kronecker(alpha, alpha), [n, n]))
    report.append(compare_maps("beta is an endomorphism",
                               beta * mu_matrix, mu_matrix * kronecker(beta, beta), [n, n]))
    report.append(twist_commutation(alpha, beta))
    return report


def yau_twist(assoc_mu, alpha: Matrix, beta: Matrix, basis_labels: Sequence[str] = (),
              name: str = "yau twist") -> FDBiHomAlgebra:
    """
    Twist an associative product into a BiHom one: mu(g (x) h) := assoc_mu(alpha(g) (x) beta(h)).

    Args:
        assoc_mu: structure constants c[i][j][k] of an associative algebra
        alpha, beta: commuting algebra endomorphisms of assoc_mu

    Raises:
        PreconditionError: If an input axiom fails; the error carries the report
    """
    alpha, beta = Matrix(alpha), Matrix(beta)
    n = alpha.rows
    core = bilinear_matrix(frozen_tensor(assoc_mu, (n, n, n), "assoc_mu"))
    pre = validate_associative_core(core, alpha, beta)
    if not pre.passed:
        failed = pre.failures()[0]
        raise PreconditionError(f"yau_twist: input axiom '{failed.name}' fails", pre)
    return FDBiHomAlgebra.from_matrix(core * kronecker(alpha, beta), alpha, beta, basis_labels, name)


def identity_morphism(a: FDBiHomAlgebra) -> AlgebraMorphism:
    return AlgebraMorphism(a, a, identity(a.dim))


def compose_morphisms(f: AlgebraMorphism, g: AlgebraMorphism) -> AlgebraMorphism:
    """g o f."""
    if not f.target.same_as(g.source):
        raise InputError("compose_morphisms: target of the first map is not the source of the second")
    return AlgebraMorphism(f.source, g.target, g.map * f.map)


def validate_morphism(f: AlgebraMorphism) -> ValidationReport:
    """mu' o (f (x) f) = f o mu, f o alpha = alpha' o f, f o beta = beta' o f."""
    s, t, m = f.source, f.target, f.map
    n = s.dim
    report = ValidationReport(f"morphism {s.name} -> {t.name}")
    report.append(compare_maps("multiplicativity",
                               t.mu_matrix * kronecker(m, m), m * s.mu_matrix, [n, n], s.label))
    report.append(compare_maps("alpha intertwining", m * s.alpha, t.alpha * m, [n], s.label))
    report.append(compare_maps("beta intertwining", m * s.beta, t.beta * m, [n], s.label))
    return report


def specialization(a: FDBiHomAlgebra) -> str:
    """'classical' when alpha = beta = Id, 'hom' when alpha = beta, else 'bihom'."""
    if a.alpha == a.beta:
        return "classical" if a.alpha == identity(a.dim) else "hom"
    return "bihom"


def _closure_failure(report: ValidationReport, name: str, s: Subspace,
                     candidates) -> bool:
    for description, vector in candidates:
        if not s.contains(vector):
            report.add(name, False, {"element": description, "image": format_vector(vector)})
            return False
    report.add(name, True)
    return True


def is_ideal(a: FDBiHomAlgebra, s: Subspace) -> IdealHandle:
    """
    Verify that s is a twist-closed two-sided ideal.

    Absorption: e_i v and v e_i in s for basis e_i and basis vectors v of s.
    Twist closure: alpha(v), beta(v) in s.

    Returns:
        IdealHandle whose flags record the outcome; the report carries a witness
        for every failing condition
    """
    if s.ambient_dim != a.dim:
        raise InputError(f"is_ideal: subspace ambient dimension {s.ambient_dim} != algebra dimension {a.dim}")
    report = ValidationReport(f"ideal of '{a.name}' (dim {s.dim})")
    vectors = s.vectors()
    basis = [(a.basis_labels[i], a.basis_vector(i)) for i in range(a.dim)]
    left = ((f"{lbl} * {format_vector(v)}", a.product(e, v)) for lbl, e in basis for v in vectors)
    right = ((f"{format_vector(v)} * {lbl}", a.product(v, e)) for lbl, e in basis for v in vectors)
    absorbing = _closure_failure(report, "left absorption", s, left)
    absorbing = _closure_failure(report, "right absorption", s, right) and absorbing
    alpha_img = ((f"alpha({format_vector(v)})", list(a.alpha * column(v))) for v in vectors)
    beta_img = ((f"beta({format_vector(v)})", list(a.beta * column(v))) for v in vectors)
    twist_closed = _closure_failure(report, "alpha closure", s, alpha_img)
    twist_closed = _closure_failure(report, "beta closure", s, beta_img) and twist_closed
    return IdealHandle(a, s, twist_closed, absorbing, s.codim, report)


def is_subalgebra(a: FDBiHomAlgebra, s: Subspace) -> ValidationReport:
    """Closed under the product and under alpha and beta."""
    report = ValidationReport(f"subalgebra of '{a.name}' (dim {s.dim})")
    vectors = s.vectors()
    products = ((f"{format_vector(u)} * {format_vector(v)}", a.product(u, v)) for u in vectors for v in vectors)
    _closure_failure(report, "product closure", s, products)
    _closure_failure(report, "alpha closure", s,
                     ((f"alpha({format_vector(v)})", list(a.alpha * column(v))) for v in vectors))
    _closure_failure(report, "beta closure", s,
                     ((f"beta({format_vector(v)})", list(a.beta * column(v))) for v in vectors))
    return report


def ideal_closure(a: FDBiHomAlgebra, generators: Sequence[Sequence]) -> IdealHandle:
    """
    Smallest twist-closed two-sided ideal containing the generators.

    Each pass adds all e_i v, v e_i, alpha(v), beta(v); the dimension strictly
    grows until the fixpoint, so dim + 1 passes always suffice.
    """
    s = Subspace.span(generators, a.dim)
    for step in range(a.dim + 1):
        vectors = s.vectors()
        grown = list(vectors)
        for i in range(a.dim):
            e = a.basis_vector(i)
            for v in vectors:
                grown.append(a.product(e, v))
                grown.append(a.product(v, e))
        for v in vectors:
            grown.append(list(a.alpha * column(v)))
            grown.append(list(a.beta * column(v)))
        bigger = Subspace.span(grown, a.dim)
        logger.debug("ideal_closure pass %d: dim %d -> %d", step, s.dim, bigger.dim)
        if bigger == s:
            break
        s = bigger
    return is_ideal(a, s)


def require_ideal(j: IdealHandle, op: str) -> None:
    if not j.is_ideal:
        raise ContractError(f"{op}: witness subspace is not a verified twist-closed ideal", j.report)


def intersect_ideals(j: IdealHandle, h: IdealHandle) -> IdealHandle:
    """J cap H, re-verified as an ideal."""
    if not j.algebra.same_as(h.algebra):
        raise InputError("intersect_ideals: ideals belong to different algebras")
    return is_ideal(j.algebra, intersect(j.subspace, h.subspace))


def intersection_bookkeeping(j: IdealHandle, h: IdealHandle, k: IdealHandle) -> ValidationReport:
    """
    dim(G/(J cap H)) = dim(G/H) + dim(H/(J cap H)), and H/(J cap H) embeds in G/J.
    """
    report = ValidationReport("intersection codimension")
    quotient_h = h.subspace.dim - k.subspace.dim
    report.add("codimension identity", k.codim == h.codim + quotient_h,
               None if k.codim == h.codim + quotient_h else
               {"codim(J cap H)": k.codim, "codim(H)": h.codim, "dim(H/(J cap H))": quotient_h})
    report.add("H/(J cap H) embeds in G/J", quotient_h <= j.codim,
               None if quotient_h <= j.codim else {"dim(H/(J cap H))": quotient_h, "codim(J)": j.codim})
    report.add("intersection is an ideal", k.is_ideal)
    return report


def preimage_ideal(f: AlgebraMorphism, j: IdealHandle) -> IdealHandle:
    """
    f^{-1}(J) = ker(pi_J o f), verified as an ideal of the source.

    Raises:
        ContractError: If f is not a validated morphism or J is not a verified ideal
    """
    if not j.algebra.same_as(f.target):
        raise InputError("preimage_ideal: ideal does not live in the target of the morphism")
    check = validate_morphism(f)
    if not check.passed:
        raise ContractError("preimage_ideal: map is not a BiHom-algebra morphism", check)
    require_ideal(j, "preimage_ideal")
    q = quotient(j.subspace)
    handle = is_ideal(f.source, kernel_basis(q.projection * f.map))
    logger.debug("preimage_ideal: codim %d in source, %d in target", handle.codim, j.codim)
    return handle


def quotient_algebra(a: FDBiHomAlgebra, j: IdealHandle) -> Tuple[FDBiHomAlgebra, AlgebraMorphism]:
    """
    G/J with structure pushed through projection and section, plus pi: G -> G/J.

    Raises:
        ContractError: If j is not a verified ideal
    """
    if not j.algebra.same_as(a):
        raise InputError("quotient_algebra: ideal belongs to another algebra")
    require_ideal(j, "quotient_algebra")
    q = quotient(j.subspace)
    p, s = q.projection, q.section
    free = [next(i for i in range(a.dim) if s[i, c] != 0) for c in range(q.codim)]
    labels = [f"[{a.basis_labels[i]}]" for i in free]
    quot = FDBiHomAlgebra.from_matrix(p * a.mu_matrix * kronecker(s, s), p * a.alpha * s, p * a.beta * s,
                                      labels, f"{a.name}/J")
    return quot, AlgebraMorphism(a, quot, p)


def factor_through_quotient(f: AlgebraMorphism, pi: AlgebraMorphism) -> AlgebraMorphism:
    """
    The unique f_bar with f_bar o pi = f.

    Raises:
        PreconditionError: If pi is not surjective or ker(pi) is not inside ker(f)
    """
    if not f.source.same_as(pi.source):
        raise InputError("factor_through_quotient: f and pi have different sources")
    p = pi.map
    if rank(p) != p.rows:
        raise PreconditionError("factor_through_quotient: pi is not surjective")
    for v in kernel_basis(p).vectors():
        image = list(f.map * column(v))
        if any(x != 0 for x in image):
            raise PreconditionError(
                f"factor_through_quotient: kernel vector {format_vector(v)} of pi is not killed by f")
    if p.rows == 0:
        bar = Matrix.zeros(f.target.dim, 0)
    else:
        bar = f.map * p.T * (p * p.T).inv()
    return AlgebraMorphism(pi.target, f.target, bar)

"""
Finite-dimensional BiHom-coalgebras given by co-structure constants.

Delta(e_i) = sum_{j,k} d[i][j][k] e_j (x) e_k, with the same lexicographic tensor
basis as the algebra side, so dualising is a pure index transposition.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

import numpy as np

from checks.report import ValidationReport, compare_maps
from modules.algebra import default_labels, twist_commutation
from modules.linalg import Matrix, colinear_matrix, colinear_tensor, frozen_tensor, kronecker
from utils.errors import InputError


@dataclass(frozen=True, eq=False)
class FDBiHomCoalgebra:
    """Co-structure constants delta[i][j][k] plus twist matrices psi, phi."""
    dim: int
    basis_labels: Tuple[str, ...]
    delta: np.ndarray
    psi: Matrix
    phi: Matrix
    name: str = "coalgebra"

    def __post_init__(self):
        n = self.dim
        object.__setattr__(self, "delta", frozen_tensor(self.delta, (n, n, n), "delta"))
        object.__setattr__(self, "psi", Matrix(self.psi))
        object.__setattr__(self, "phi", Matrix(self.phi))
        labels = tuple(self.basis_labels) if self.basis_labels else default_labels(n, "c")
        object.__setattr__(self, "basis_labels", labels)
        if len(labels) != n:
            raise InputError(f"{self.name}: {len(labels)} basis labels for dimension {n}")
        for twist in ("psi", "phi"):
            shape = getattr(self, twist).shape
            if shape != (n, n):
                raise InputError(f"{self.name}: {twist} has shape {shape}, expected ({n}, {n})")

    @cached_property
    def delta_matrix(self) -> Matrix:
        """dim^2 x dim matrix of Delta."""
        return colinear_matrix(self.delta)

    def label(self, indices: Sequence[int]) -> List[str]:
        return [self.basis_labels[i] for i in indices]

    def same_as(self, other: "FDBiHomCoalgebra") -> bool:
        if other is self:
            return True
        return (self.dim == other.dim and self.delta_matrix == other.delta_matrix
                and self.psi == other.psi and self.phi == other.phi)

    @classmethod
    def from_matrix(cls, delta_matrix: Matrix, psi: Matrix, phi: Matrix,
                    basis_labels: Sequence[str] = (), name: str = "coalgebra") -> "FDBiHomCoalgebra":
        n = delta_matrix.cols
        return cls(n, tuple(basis_labels), colinear_tensor(delta_matrix, n, n), psi, phi, name)


@dataclass(frozen=True, eq=False)
class CoalgebraMorphism:
    """Linear map source -> target given by a target.dim x source.dim matrix."""
    source: FDBiHomCoalgebra
    target: FDBiHomCoalgebra
    map: Matrix

    def __post_init__(self):
        object.__setattr__(self, "map", Matrix(self.map))
        expected = (self.target.dim, self.source.dim)
        if self.map.shape != expected:
            raise InputError(f"coalgebra morphism: map has shape {self.map.shape}, expected {expected}")


def validate_coalgebra(c: FDBiHomCoalgebra) -> ValidationReport:
    """
    Twist commutation, (phi (x) Delta) Delta = (Delta (x) psi) Delta, and
    Delta psi = (psi (x) psi) Delta, Delta phi = (phi (x) phi) Delta.
    """
    n = c.dim
    d = c.delta_matrix
    report = ValidationReport(f"coalgebra '{c.name}'")
    report.append(twist_commutation(c.psi, c.phi))
    report.append(compare_maps("BiHom-coassociativity",
                               kronecker(c.phi, d) * d, kronecker(d, c.psi) * d, [n], c.label))
    report.append(compare_maps("psi-comultiplicativity",
                               d * c.psi, kronecker(c.psi, c.psi) * d, [n], c.label))
    report.append(compare_maps("phi-comultiplicativity",
                               d * c.phi, kronecker(c.phi, c.phi) * d, [n], c.label))
    return report


def validate_coalgebra_morphism(g: CoalgebraMorphism) -> ValidationReport:
    """(g (x) g) Delta = Delta' g, g psi = psi' g, g phi = phi' g."""
    s, t, m = g.source, g.target, g.map
    n = s.dim
    report = ValidationReport(f"coalgebra morphism {s.name} -> {t.name}")
    report.append(compare_maps("comultiplicativity",
                               kronecker(m, m) * s.delta_matrix, t.delta_matrix * m, [n], s.label))
    report.append(compare_maps("psi intertwining", m * s.psi, t.psi * m, [n], s.label))
    report.append(compare_maps("phi intertwining", m * s.phi, t.phi * m, [n], s.label))
    return report


def compose_coalgebra_morphisms(f: CoalgebraMorphism, g: CoalgebraMorphism) -> CoalgebraMorphism:
    """g o f."""
    if not f.target.same_as(g.source):
        raise InputError("compose_coalgebra_morphisms: target of the first map is not the source of the second")
    return CoalgebraMorphism(f.source, g.target, g.map * f.map)

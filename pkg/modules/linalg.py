"""
Exact rational linear algebra: matrices, subspaces, quotients and Kronecker
products.

Scalars are sympy Rationals and matrices are sympy ImmutableMatrix, so every
identity checked elsewhere in the package holds with zero tolerance. Tensor
bases are ordered lexicographically: e_i (x) e_j has index i * dim2 + j.
Subspace bases are stored in reduced row-echelon form, which makes subspace
equality a plain matrix equality.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy import ImmutableMatrix, Rational, eye, zeros

from utils.errors import InputError
from utils.logger import get_logger

logger = get_logger(__name__)

Matrix = ImmutableMatrix


def matrix(rows: int, cols: int, entries: Sequence = None) -> Matrix:
    """Build a rows x cols matrix from a row-major entry sequence (zeros if omitted)."""
    if entries is None:
        return Matrix(zeros(rows, cols))
    entries = list(entries)
    if len(entries) != rows * cols:
        raise InputError(f"matrix: expected {rows * cols} entries, got {len(entries)}")
    return Matrix(rows, cols, [Rational(e) for e in entries])


def identity(n: int) -> Matrix:
    return Matrix(eye(n))


def zero_matrix(rows: int, cols: int) -> Matrix:
    return Matrix(zeros(rows, cols))


def diag(*values) -> Matrix:
    n = len(values)
    return Matrix(n, n, lambda i, j: Rational(values[i]) if i == j else 0)


def column(values: Sequence) -> Matrix:
    values = list(values)
    return Matrix(len(values), 1, [Rational(v) for v in values])


def as_array(m: Matrix) -> np.ndarray:
    """Matrix -> 2-D numpy object array (shape preserved for empty matrices)."""
    return np.array(list(m), dtype=object).reshape(m.rows, m.cols)


def from_array(arr: np.ndarray) -> Matrix:
    rows, cols = arr.shape
    return Matrix(rows, cols, [Rational(x) for x in arr.flat])


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """
    Reduced row-echelon form.

    Pivot choice: first nonzero column, topmost available row, scaled to a
    leading 1. Zero rows are kept at the bottom.

    Returns:
        tuple: (reduced matrix, pivot columns in increasing order)
    """
    if m.rows == 0 or m.cols == 0:
        return Matrix(m), []
    reduced, pivots = Matrix(m).rref()
    return Matrix(reduced), list(pivots)


def kronecker(a: Matrix, b: Matrix) -> Matrix:
    """(a (x) b) on the lexicographic tensor basis: (a (x) b)(u (x) v) = a(u) (x) b(v)."""
    return from_array(np.kron(as_array(a), as_array(b)))


@dataclass(frozen=True)
class Subspace:
    """Coordinate subspace of K^ambient_dim with an RREF basis (rows)."""
    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise InputError(f"span: vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not vectors:
            return cls.zero(ambient_dim)
        stacked = Matrix(len(vectors), ambient_dim, [Rational(x) for v in vectors for x in v])
        reduced, pivots = rref(stacked)
        return cls(ambient_dim, Matrix(reduced[:len(pivots), :]))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, zero_matrix(0, ambient_dim))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    def vectors(self) -> List[List[Rational]]:
        return [list(self.basis.row(i)) for i in range(self.dim)]

    def pivots(self) -> List[int]:
        out = []
        for i in range(self.dim):
            row = self.basis.row(i)
            out.append(next(j for j in range(self.ambient_dim) if row[j] != 0))
        return out

    def contains(self, v: Sequence) -> bool:
        return membership(self, v) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.vectors())

    def image(self, m: Matrix) -> "Subspace":
        """Span of m applied to the basis vectors."""
        if m.cols != self.ambient_dim:
            raise InputError(f"image: map has {m.cols} columns, subspace lives in dimension {self.ambient_dim}")
        return Subspace.span([list(m * column(v)) for v in self.vectors()], m.rows)


def kernel_basis(m: Matrix) -> Subspace:
    """Subspace {v : m v = 0}; its dimension is cols - rank(m)."""
    if m.cols == 0:
        return Subspace.zero(0)
    if m.rows == 0:
        return Subspace.full(m.cols)
    return Subspace.span([list(v) for v in Matrix(m).nullspace()], m.cols)


def membership(s: Subspace, v: Sequence) -> Optional[List[Rational]]:
    """
    Coordinates of v in the basis of s, or None when v is not in the span.

    The basis is in RREF, so the coordinate on row i is the entry of v at that
    row's pivot column; v belongs to s iff recombining reproduces v.
    """
    v = [Rational(x) for x in v]
    if len(v) != s.ambient_dim:
        raise InputError(f"membership: vector of length {len(v)} in ambient dimension {s.ambient_dim}")
    coords = [v[p] for p in s.pivots()]
    recombined = [sum((coords[i] * s.basis[i, j] for i in range(s.dim)), Rational(0))
                  for j in range(s.ambient_dim)]
    if recombined != v:
        return None
    return coords


def subspace_sum(s1: Subspace, s2: Subspace) -> Subspace:
    _check_same_ambient(s1, s2, "subspace_sum")
    return Subspace.span(s1.vectors() + s2.vectors(), s1.ambient_dim)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    """
    Intersection via the kernel of the stacked system [B1^T | -B2^T].

    Raises:
        InputError: If the ambient dimensions differ
    """
    _check_same_ambient(s1, s2, "intersect")
    if s1.dim == 0 or s2.dim == 0:
        return Subspace.zero(s1.ambient_dim)
    system = Matrix.hstack(s1.basis.T, -s2.basis.T)
    relations = kernel_basis(system)
    vectors = []
    for rel in relations.vectors():
        coeffs = Matrix(1, s1.dim, rel[:s1.dim])
        vectors.append(list(coeffs * s1.basis))
    return Subspace.span(vectors, s1.ambient_dim)


def tensor_span(left: Subspace, right: Subspace) -> Subspace:
    """Subspace left (x) right of K^(a*b), spanned by Kronecker products of basis vectors."""
    vectors = []
    for u in left.vectors():
        for v in right.vectors():
            vectors.append(list(kronecker(Matrix(1, len(u), u), Matrix(1, len(v), v))))
    return Subspace.span(vectors, left.ambient_dim * right.ambient_dim)


@dataclass(frozen=True)
class QuotientData:
    """
    Quotient K^n / subspace with projection (codim x n) and section (n x codim).

    projection * section is the identity on the quotient and the kernel of the
    projection is exactly the subspace.
    """
    ambient_dim: int
    subspace: Subspace
    projection: Matrix
    section: Matrix

    @property
    def codim(self) -> int:
        return self.projection.rows

    def project(self, v: Sequence) -> List[Rational]:
        return list(self.projection * column(v))

    def lift(self, coords: Sequence) -> List[Rational]:
        return list(self.section * column(coords))


def quotient(s: Subspace) -> QuotientData:
    """
    Projection and section for K^n / s.

    The complement is spanned by the standard basis vectors at the non-pivot
    columns of s; projection rows are the matching rows of the inverse change
    of basis to (basis of s, complement).
    """
    n = s.ambient_dim
    pivots = set(s.pivots())
    free = [j for j in range(n) if j not in pivots]
    codim = len(free)
    section = Matrix(n, codim, lambda i, c: 1 if i == free[c] else 0)
    if codim == 0:
        return QuotientData(n, s, zero_matrix(0, n), section)
    if s.dim == 0:
        return QuotientData(n, s, identity(n), identity(n))
    change = Matrix.vstack(s.basis, section.T).T
    projection = Matrix(change.inv()[s.dim:, :])
    logger.debug("quotient: ambient %d, subspace dim %d, codim %d", n, s.dim, codim)
    return QuotientData(n, s, projection, section)


def _check_same_ambient(s1: Subspace, s2: Subspace, op: str) -> None:
    if s1.ambient_dim != s2.ambient_dim:
        raise InputError(f"{op}: ambient dimensions differ ({s1.ambient_dim} vs {s2.ambient_dim})")


def empty_tensor(*shape: int) -> np.ndarray:
    """Zero-filled object array of Rationals."""
    return np.full(shape, Rational(0), dtype=object)


def frozen_tensor(values, shape: Tuple[int, ...], where: str = "tensor") -> np.ndarray:
    """Copy values into a read-only object array of Rationals with the given shape."""
    arr = np.array(values, dtype=object)
    if arr.size == 0 and 0 in shape:
        arr = empty_tensor(*shape)
    if arr.shape != tuple(shape):
        raise InputError(f"{where}: expected shape {tuple(shape)}, got {arr.shape}")
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        out[idx] = Rational(arr[idx])
    out.setflags(write=False)
    return out


def bilinear_matrix(t: np.ndarray) -> Matrix:
    """
    Matrix of a bilinear map U (x) V -> W from its constants t[u][v][w].

    Column u * dim V + v holds the image of e_u (x) e_v.
    """
    a, b, c = t.shape
    return from_array(np.transpose(t, (2, 0, 1)).reshape(c, a * b))


def bilinear_tensor(m: Matrix, a: int, b: int) -> np.ndarray:
    """Inverse of bilinear_matrix: constants t[u][v][w] of a (W x U*V) matrix."""
    c = m.rows
    return np.transpose(as_array(m).reshape(c, a, b), (1, 2, 0))


def colinear_matrix(t: np.ndarray) -> Matrix:
    """
    Matrix of a map U -> V (x) W from its constants t[u][v][w].

    Column u holds the coordinates of the image of e_u on the basis e_v (x) e_w.
    """
    a, b, c = t.shape
    return from_array(t.reshape(a, b * c).T)


def colinear_tensor(m: Matrix, b: int, c: int) -> np.ndarray:
    """Inverse of colinear_matrix."""
    a = m.cols
    return as_array(m).T.reshape(a, b, c)

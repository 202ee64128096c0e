"""
The polynomial BiHom-algebra K[x1..xr] twisted by commuting linear
substitutions.

alpha(x^m) = prod_k (sum_l A[l][k] x_l)^(m_k), beta likewise with B, and
x^m . x^n = alpha(x^m) beta(x^n). The algebra is infinite-dimensional but
graded: twists preserve total degree, so every check below is exact up to an
explicit degree bound.

Coordinate functionals d_n (d_n(x^m) = delta_{n,m}) span the finite dual;
mu_on_dual(d_n) = d_n o alpha and eta_on_dual(d_n) = d_n o beta, and
Delta(d_n) = sum_{i+j=n} mu(d_i) (x) eta(d_j).
"""

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement, product
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from sympy import Poly, QQ, Rational, symbols
from sympy.ntheory.multinomial import multinomial_coefficients

from checks.report import ValidationReport
from modules.linalg import Matrix
from utils.errors import ContractError, InputError
from utils.logger import get_logger
from utils.rationals import format_rational

logger = get_logger(__name__)

MultiIndex = Tuple[int, ...]


def multi_index(values: Sequence[int], r: int, where: str = "multi-index") -> MultiIndex:
    """Validate and freeze a multi-index of length r with non-negative entries."""
    values = tuple(values)
    if len(values) != r:
        raise InputError(f"{where}: expected {r} exponents, got {len(values)}")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise InputError(f"{where}: exponents must be non-negative integers, got {v!r}")
    return values


def degree(m: MultiIndex) -> int:
    return sum(m)


def monomials_of_degree(r: int, d: int) -> List[MultiIndex]:
    """All multi-indices of length r and total degree d, in lexicographic order."""
    out = []
    for combo in combinations_with_replacement(range(r), d):
        m = [0] * r
        for k in combo:
            m[k] += 1
        out.append(tuple(m))
    return sorted(out)


def monomials_up_to(r: int, bound: int) -> List[MultiIndex]:
    return [m for d in range(bound + 1) for m in monomials_of_degree(r, d)]


@dataclass(frozen=True)
class PolyBiHomAlgebra:
    """
    r variables and commuting r x r twist matrices A, B (column k is the image of x_k).

    Raises:
        InputError: If the matrices are not r x r or do not commute
    """
    r: int
    A: Tuple[Tuple[Rational, ...], ...]
    B: Tuple[Tuple[Rational, ...], ...]
    name: str = "poly"

    def __post_init__(self):
        if self.r < 1:
            raise InputError(f"{self.name}: need at least one variable, got r = {self.r}")
        for which in ("A", "B"):
            rows = tuple(tuple(Rational(x) for x in row) for row in getattr(self, which))
            if len(rows) != self.r or any(len(row) != self.r for row in rows):
                raise InputError(f"{self.name}: {which} must be {self.r} x {self.r}")
            object.__setattr__(self, which, rows)
        if self.matrix("A") * self.matrix("B") != self.matrix("B") * self.matrix("A"):
            raise InputError(f"{self.name}: A and B do not commute")

    @classmethod
    def from_rows(cls, r: int, a_entries: Sequence, b_entries: Sequence, name: str = "poly") -> "PolyBiHomAlgebra":
        """Build from row-major entry lists of length r * r."""
        for label, entries in (("A", a_entries), ("B", b_entries)):
            if len(entries) != r * r:
                raise InputError(f"{name}: {label} needs {r * r} entries, got {len(entries)}")
        a = tuple(tuple(a_entries[i * r:(i + 1) * r]) for i in range(r))
        b = tuple(tuple(b_entries[i * r:(i + 1) * r]) for i in range(r))
        return cls(r, a, b, name)

    def matrix(self, which: str) -> Matrix:
        return Matrix(getattr(self, _twist_key(which)))

    @property
    def gens(self):
        return symbols(f"x1:{self.r + 1}")

    def is_invertible(self, which: str) -> bool:
        return self.matrix(which).det() != 0


def _twist_key(which: str) -> str:
    key = {"A": "A", "alpha": "A", "B": "B", "beta": "B"}.get(which)
    if key is None:
        raise InputError(f"unknown twist {which!r}; expected A or B")
    return key


def make_poly(alg: PolyBiHomAlgebra, terms: Dict[MultiIndex, Rational]) -> Poly:
    """Polynomial over QQ in the algebra's variables from a multi-index map."""
    terms = {tuple(k): Rational(v) for k, v in terms.items() if v != 0}
    if not terms:
        return Poly(0, *alg.gens, domain=QQ)
    return Poly.from_dict(terms, *alg.gens, domain=QQ)


def monomial(alg: PolyBiHomAlgebra, m: Sequence[int]) -> Poly:
    return make_poly(alg, {multi_index(m, alg.r): 1})


def poly_terms(p: Poly) -> Dict[MultiIndex, Rational]:
    """Nonzero coefficients keyed by exponent tuple."""
    return {tuple(k): Rational(v) for k, v in p.as_dict(native=False).items() if v != 0}


@lru_cache(maxsize=4096)
def _twist_terms(rows: Tuple[Tuple[Rational, ...], ...], m: MultiIndex) -> Tuple[Tuple[MultiIndex, Rational], ...]:
    """
    Expansion of prod_k (sum_l P[l][k] x_l)^(m_k).

    Column k contributes sum over compositions (n_1k..n_rk) of m_k of
    m_k! / prod_l n_lk! * prod_l P[l][k]^(n_lk) x^(n_.k); the x^p coefficient
    sums over all matrices (n_lk) with column sums m_k and row sums p_l.
    """
    r = len(rows)
    acc: Dict[MultiIndex, Rational] = {(0,) * r: Rational(1)}
    for k in range(r):
        if m[k] == 0:
            continue
        column_terms = {}
        for comp, mult in multinomial_coefficients(r, m[k]).items():
            coeff = Rational(mult)
            for l in range(r):
                if comp[l]:
                    coeff *= rows[l][k] ** comp[l]
            if coeff != 0:
                column_terms[comp] = coeff
        grown: Dict[MultiIndex, Rational] = {}
        for p, c in acc.items():
            for comp, d in column_terms.items():
                key = tuple(x + y for x, y in zip(p, comp))
                grown[key] = grown.get(key, Rational(0)) + c * d
        acc = {key: c for key, c in grown.items() if c != 0}
    return tuple(sorted(acc.items()))


def twist_apply(alg: PolyBiHomAlgebra, which: str, m: Sequence[int]) -> Poly:
    """alpha(x^m) for which in {A, alpha}, beta(x^m) for {B, beta}."""
    m = multi_index(m, alg.r)
    return make_poly(alg, dict(_twist_terms(getattr(alg, _twist_key(which)), m)))


def twist_poly(alg: PolyBiHomAlgebra, which: str, p: Poly) -> Poly:
    """Linear extension of twist_apply to an arbitrary polynomial."""
    total = make_poly(alg, {})
    for m, c in poly_terms(p).items():
        total = total + twist_apply(alg, which, m) * c
    return total


@lru_cache(maxsize=4096)
def _twisted_product(alg: PolyBiHomAlgebra, m: MultiIndex, n: MultiIndex) -> Poly:
    return twist_apply(alg, "A", m) * twist_apply(alg, "B", n)


def twisted_product(alg: PolyBiHomAlgebra, m: Sequence[int], n: Sequence[int]) -> Poly:
    """x^m . x^n = alpha(x^m) beta(x^n)."""
    return _twisted_product(alg, multi_index(m, alg.r), multi_index(n, alg.r))


def multiply(alg: PolyBiHomAlgebra, p: Poly, q: Poly) -> Poly:
    """Bilinear extension of the twisted product."""
    return twist_poly(alg, "A", p) * twist_poly(alg, "B", q)


@dataclass(frozen=True)
class CofiniteMonomialIdeal:
    """
    Monomial ideal with finite monomial complement.

    kind 'total_degree': {x^n : |n| >= degree}
    kind 'staircase':    {x^n : n_i >= corner_i for some i}
    """
    kind: str
    degree: Optional[int] = None
    corner: Optional[MultiIndex] = None

    def __post_init__(self):
        if self.kind == "total_degree":
            if self.degree is None or self.degree < 0:
                raise InputError("total-degree ideal needs a non-negative degree")
        elif self.kind == "staircase":
            if not self.corner or any(c < 0 for c in self.corner):
                raise InputError("staircase ideal needs a non-empty corner of non-negative exponents")
            object.__setattr__(self, "corner", tuple(self.corner))
        else:
            raise InputError(f"unknown ideal kind {self.kind!r}")

    @classmethod
    def total_degree(cls, d: int) -> "CofiniteMonomialIdeal":
        return cls("total_degree", degree=d)

    @classmethod
    def staircase(cls, corner: Sequence[int]) -> "CofiniteMonomialIdeal":
        return cls("staircase", corner=tuple(corner))

    def describe(self) -> str:
        if self.kind == "total_degree":
            return f"TotalDegree({self.degree})"
        return f"Staircase({list(self.corner)})"


def ideal_member(ideal: CofiniteMonomialIdeal, n: Sequence[int], r: Optional[int] = None) -> bool:
    """
    Whether x^n lies in the ideal.

    Raises:
        InputError: If n has the wrong number of variables (r when given,
        the staircase corner length otherwise)
    """
    n = tuple(n)
    if r is not None and len(n) != r:
        raise InputError(f"ideal_member: multi-index of length {len(n)}, expected {r} variables")
    if ideal.kind == "total_degree":
        return degree(n) >= ideal.degree
    if len(n) != len(ideal.corner):
        raise InputError(f"ideal_member: multi-index of length {len(n)} for a staircase in {len(ideal.corner)} variables")
    return any(x >= c for x, c in zip(n, ideal.corner))


def complement(ideal: CofiniteMonomialIdeal, r: int) -> List[MultiIndex]:
    """The finitely many monomials outside the ideal, lexicographically sorted."""
    if ideal.kind == "total_degree":
        return monomials_up_to(r, ideal.degree - 1) if ideal.degree > 0 else []
    if len(ideal.corner) != r:
        raise InputError(f"complement: staircase corner has length {len(ideal.corner)}, expected {r}")
    return sorted(product(*(range(c) for c in ideal.corner)))


def _first_escape(p: Poly, ideal: CofiniteMonomialIdeal, r: int) -> Optional[MultiIndex]:
    for term in sorted(poly_terms(p)):
        if not ideal_member(ideal, term, r):
            return term
    return None


def ideal_absorption_check(alg: PolyBiHomAlgebra, ideal: CofiniteMonomialIdeal,
                           degree_bound: int) -> ValidationReport:
    """
    Check that ideal is a twist-closed two-sided ideal for the twisted product,
    on all monomials up to degree_bound.

    Returns:
        ValidationReport with left/right absorption and alpha/beta closure; a
        failing check names the monomials and the escaping term
    """
    report = ValidationReport(f"ideal {ideal.describe()} in '{alg.name}' (degree <= {degree_bound})")
    monos = monomials_up_to(alg.r, degree_bound)
    members = [n for n in monos if ideal_member(ideal, n, alg.r)]

    def scan(name, items):
        for key, p in items:
            escape = _first_escape(p, ideal, alg.r)
            if escape is not None:
                report.add(name, False, {"input": key, "term outside ideal": list(escape)})
                return
        report.add(name, True)

    scan("left absorption", (({"m": list(m), "n": list(n)}, twisted_product(alg, m, n))
                             for n in members for m in monos if degree(m) + degree(n) <= degree_bound))
    scan("right absorption", (({"m": list(m), "n": list(n)}, twisted_product(alg, m, n))
                              for m in members for n in monos if degree(m) + degree(n) <= degree_bound))
    scan("alpha closure", (({"n": list(n)}, twist_apply(alg, "A", n)) for n in members))
    scan("beta closure", (({"n": list(n)}, twist_apply(alg, "B", n)) for n in members))
    logger.debug("ideal_absorption_check %s: %s", ideal.describe(), report.passed)
    return report


@dataclass(frozen=True)
class DualFunctional:
    """Finite combination sum c_n d_n of coordinate functionals, zeros dropped."""
    terms: Tuple[Tuple[MultiIndex, Rational], ...] = field(default=())

    @classmethod
    def from_dict(cls, terms: Dict[Sequence[int], object]) -> "DualFunctional":
        clean = {}
        for k, v in terms.items():
            v = Rational(v)
            if v != 0:
                clean[tuple(k)] = clean.get(tuple(k), Rational(0)) + v
        return cls(tuple(sorted((k, v) for k, v in clean.items() if v != 0)))

    @classmethod
    def coordinate(cls, n: Sequence[int]) -> "DualFunctional":
        return cls(((tuple(n), Rational(1)),))

    def as_dict(self) -> Dict[MultiIndex, Rational]:
        return dict(self.terms)

    def coeff(self, n: Sequence[int]) -> Rational:
        return self.as_dict().get(tuple(n), Rational(0))

    @property
    def support(self) -> List[MultiIndex]:
        return [k for k, _ in self.terms]

    def scaled(self, c) -> "DualFunctional":
        c = Rational(c)
        return DualFunctional.from_dict({k: c * v for k, v in self.terms})

    def __add__(self, other: "DualFunctional") -> "DualFunctional":
        total = self.as_dict()
        for k, v in other.terms:
            total[k] = total.get(k, Rational(0)) + v
        return DualFunctional.from_dict(total)

    def describe(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{format_rational(v)}*d{list(k)}" for k, v in self.terms)


def evaluate(f: DualFunctional, p: Poly) -> Rational:
    """<f, p> = sum_n f_n * (coefficient of x^n in p)."""
    terms = poly_terms(p)
    return sum((v * terms.get(k, Rational(0)) for k, v in f.terms), Rational(0))


def _compose_with_twist(alg: PolyBiHomAlgebra, which: str, f: DualFunctional) -> DualFunctional:
    total: Dict[MultiIndex, Rational] = {}
    rows = getattr(alg, _twist_key(which))
    for n, c in f.terms:
        for m in monomials_of_degree(alg.r, degree(n)):
            coeff = dict(_twist_terms(rows, m)).get(n)
            if coeff:
                total[m] = total.get(m, Rational(0)) + c * coeff
    return DualFunctional.from_dict(total)


def mu_on_dual(alg: PolyBiHomAlgebra, f: DualFunctional) -> DualFunctional:
    """f o alpha: the coefficient of d_m in mu(d_n) is that of x^n in alpha(x^m)."""
    return _compose_with_twist(alg, "A", f)


def eta_on_dual(alg: PolyBiHomAlgebra, f: DualFunctional) -> DualFunctional:
    """f o beta."""
    return _compose_with_twist(alg, "B", f)


def delta_dual(alg: PolyBiHomAlgebra, n: Sequence[int]) -> List[Tuple[DualFunctional, DualFunctional]]:
    """Delta(d_n) = sum over componentwise splittings i + j = n of mu(d_i) (x) eta(d_j)."""
    n = multi_index(n, alg.r)
    pairs = []
    for i in product(*(range(k + 1) for k in n)):
        j = tuple(a - b for a, b in zip(n, i))
        pairs.append((mu_on_dual(alg, DualFunctional.coordinate(i)),
                      eta_on_dual(alg, DualFunctional.coordinate(j))))
    return pairs


def delta_of_functional(alg: PolyBiHomAlgebra, f: DualFunctional) -> List[Tuple[DualFunctional, DualFunctional]]:
    """Linear extension of delta_dual."""
    pairs = []
    for n, c in f.terms:
        pairs.extend((left.scaled(c), right) for left, right in delta_dual(alg, n))
    return pairs


def dual_tensor(pairs: Sequence[Tuple[DualFunctional, DualFunctional]]) -> Dict[Tuple[MultiIndex, MultiIndex], Rational]:
    """Canonical form {(i, j): c} of sum left (x) right, zeros dropped."""
    total: Dict[Tuple[MultiIndex, MultiIndex], Rational] = {}
    for left, right in pairs:
        for i, a in left.terms:
            for j, b in right.terms:
                total[(i, j)] = total.get((i, j), Rational(0)) + a * b
    return {k: v for k, v in sorted(total.items()) if v != 0}


def delta_witness(alg: PolyBiHomAlgebra, n: Sequence[int]) -> Tuple[CofiniteMonomialIdeal, ValidationReport]:
    """TotalDegree(|n| + 1), checked to annihilate every factor of Delta(d_n)."""
    n = multi_index(n, alg.r)
    ideal = CofiniteMonomialIdeal.total_degree(degree(n) + 1)
    report = ValidationReport(f"witness {ideal.describe()} for Delta(d{list(n)})")
    bad = None
    for left, right in delta_dual(alg, n):
        for f in (left, right):
            for m in f.support:
                if ideal_member(ideal, m, alg.r):
                    bad = m
                    break
    report.add("factors vanish on witness", bad is None, None if bad is None else {"monomial": list(bad)})
    return ideal, report


def pairing_check(alg: PolyBiHomAlgebra, n: Sequence[int], degree_bound: int) -> ValidationReport:
    """
    <Delta(d_n), x^m (x) x^k> = d_n(x^m . x^k) for all |m| + |k| <= degree_bound.
    """
    n = multi_index(n, alg.r)
    report = ValidationReport(f"pairing Delta(d{list(n)}) in '{alg.name}' (degree <= {degree_bound})")
    tensor = dual_tensor(delta_dual(alg, n))
    monos = monomials_up_to(alg.r, degree_bound)
    for m in monos:
        for k in monos:
            if degree(m) + degree(k) > degree_bound:
                continue
            lhs = tensor.get((m, k), Rational(0))
            rhs = poly_terms(twisted_product(alg, m, k)).get(n, Rational(0))
            if lhs != rhs:
                report.add("pairing identity", False,
                           {"m": list(m), "k": list(k), "lhs": str(lhs), "rhs": str(rhs)})
                return report
    report.add("pairing identity", True)
    return report


def _triple_tensor(outer, inner_left: bool, alg: PolyBiHomAlgebra, twist) -> Dict[Tuple, Rational]:
    """Coefficients of (twist (x) Delta) or (Delta (x) twist) applied to a pair list."""
    total: Dict[Tuple, Rational] = {}
    for left, right in outer:
        if inner_left:
            fixed = twist(alg, right)
            for l2, r2 in delta_of_functional(alg, left):
                for (a, b), c in dual_tensor([(l2, r2)]).items():
                    for z, d in fixed.terms:
                        total[(a, b, z)] = total.get((a, b, z), Rational(0)) + c * d
        else:
            fixed = twist(alg, left)
            for l2, r2 in delta_of_functional(alg, right):
                for (b, z), c in dual_tensor([(l2, r2)]).items():
                    for a, d in fixed.terms:
                        total[(a, b, z)] = total.get((a, b, z), Rational(0)) + c * d
    return {k: v for k, v in total.items() if v != 0}


def coassoc_check(alg: PolyBiHomAlgebra, n: Sequence[int], degree_bound: int) -> ValidationReport:
    """
    (phi (x) Delta) Delta(d_n) = (Delta (x) psi) Delta(d_n) with phi = (. o alpha),
    psi = (. o beta), on all x^a (x) x^b (x) x^c with |a| + |b| + |c| <= degree_bound;
    also d_n(alpha(x^a)(x^b x^c)) = d_n((x^a x^b) beta(x^c)) directly.
    """
    n = multi_index(n, alg.r)
    report = ValidationReport(f"coassociativity Delta(d{list(n)}) in '{alg.name}' (degree <= {degree_bound})")
    outer = delta_dual(alg, n)
    lhs = _triple_tensor(outer, False, alg, mu_on_dual)
    rhs = _triple_tensor(outer, True, alg, eta_on_dual)
    monos = monomials_up_to(alg.r, degree_bound)
    triples = [(a, b, c) for a in monos for b in monos for c in monos
               if degree(a) + degree(b) + degree(c) <= degree_bound]
    failure = next(({"a": list(t[0]), "b": list(t[1]), "c": list(t[2]),
                     "lhs": str(lhs.get(t, 0)), "rhs": str(rhs.get(t, 0))}
                    for t in triples if lhs.get(t, Rational(0)) != rhs.get(t, Rational(0))), None)
    report.add("BiHom-coassociativity", failure is None, failure)

    failure = None
    for a, b, c in triples:
        xa, xb, xc = monomial(alg, a), monomial(alg, b), monomial(alg, c)
        left = multiply(alg, twist_poly(alg, "A", xa), multiply(alg, xb, xc))
        right = multiply(alg, multiply(alg, xa, xb), twist_poly(alg, "B", xc))
        lv = poly_terms(left).get(n, Rational(0))
        rv = poly_terms(right).get(n, Rational(0))
        if lv != rv:
            failure = {"a": list(a), "b": list(b), "c": list(c), "lhs": str(lv), "rhs": str(rv)}
            break
    report.add("BiHom-associativity at d_n", failure is None, failure)
    return report


def functional_in_finite_dual(alg: PolyBiHomAlgebra, f: DualFunctional, ideal: CofiniteMonomialIdeal,
                              degree_bound: int) -> Tuple[bool, ValidationReport]:
    """
    Whether f annihilates the ideal, i.e. its support avoids it.

    Raises:
        ContractError: If ideal fails ideal_absorption_check at degree_bound
    """
    check = ideal_absorption_check(alg, ideal, degree_bound)
    if not check.passed:
        raise ContractError(f"functional_in_finite_dual: {ideal.describe()} is not an ideal of '{alg.name}' "
                            f"up to degree {degree_bound}", check)
    report = ValidationReport(f"{f.describe()} in finite dual via {ideal.describe()}")
    report.extend(check)
    inside = next((m for m in f.support if ideal_member(ideal, m, alg.r)), None)
    report.add("support avoids ideal", inside is None, None if inside is None else {"monomial": list(inside)})
    return inside is None, report


def specialization_check(alg: PolyBiHomAlgebra, degree_bound: int) -> ValidationReport:
    """With A = B the two dual twists agree: mu_on_dual = eta_on_dual on every d_n up to the bound."""
    report = ValidationReport(f"Hom specialization of '{alg.name}' (degree <= {degree_bound})")
    report.add("A equals B", alg.A == alg.B)
    failure = None
    for n in monomials_up_to(alg.r, degree_bound):
        d = DualFunctional.coordinate(n)
        if mu_on_dual(alg, d) != eta_on_dual(alg, d):
            failure = {"n": list(n)}
            break
    report.add("mu_on_dual equals eta_on_dual", failure is None, failure)
    return report


def multinomial_sum(alg: PolyBiHomAlgebra, which: str, m: Sequence[int]) -> Tuple[Rational, Rational]:
    """(sum of coefficients of the twist of x^m, prod_k (column sum k)^(m_k))."""
    m = multi_index(m, alg.r)
    total = sum(poly_terms(twist_apply(alg, which, m)).values(), Rational(0))
    mat = alg.matrix(which)
    expected = Rational(1)
    for k in range(alg.r):
        expected *= sum(mat.col(k), Rational(0)) ** m[k]
    return total, expected

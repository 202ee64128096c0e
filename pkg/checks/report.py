"""
Validation reports: ordered (axiom-name, pass/fail, witness) records.

Every validator in modules/ returns a ValidationReport instead of raising, so
that invalid structures can be represented, inspected and rendered.
"""

from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from utils.rationals import format_vector

GREEN = "\033[32m"
RED = "\033[31m"
RESET = "\033[0m"


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a single axiom or identity check."""
    name: str
    passed: bool
    witness: Optional[Dict[str, Any]] = None
    detail: str = ""

    def to_dict(self) -> Dict[str, Any]:
        data = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.detail:
            data["detail"] = self.detail
        return data


@dataclass
class ValidationReport:
    """Ordered list of check results for one subject."""
    subject: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, witness: Optional[Dict[str, Any]] = None,
            detail: str = "") -> CheckResult:
        result = CheckResult(name, bool(passed), witness, detail)
        self.checks.append(result)
        return result

    def append(self, result: CheckResult) -> None:
        self.checks.append(result)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        """Append every check of another report, optionally namespacing the names."""
        for c in other.checks:
            name = f"{prefix}{c.name}" if prefix else c.name
            self.checks.append(CheckResult(name, c.passed, c.witness, c.detail))

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def get(self, name: str) -> Optional[CheckResult]:
        for c in self.checks:
            if c.name == name:
                return c
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def render_text(self, color: bool = False) -> str:
        lines = [f"{self.subject}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            if color:
                mark = f"{GREEN if c.passed else RED}{mark}{RESET}"
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f" - {c.detail}"
            lines.append(line)
            if c.witness is not None:
                for key in sorted(c.witness):
                    lines.append(f"      {key}: {c.witness[key]}")
        return "\n".join(lines)


def decode_index(index: int, dims: Sequence[int]) -> Tuple[int, ...]:
    """Split a lexicographic tensor index into per-factor indices."""
    out = []
    for d in reversed(dims):
        out.append(index % d)
        index //= d
    return tuple(reversed(out))


def compare_maps(name: str, lhs, rhs, source_dims: Sequence[int],
                 labels: Optional[Callable[[Tuple[int, ...]], Any]] = None) -> CheckResult:
    """
    Compare two linear maps given as matrices acting on a tensor basis.

    Args:
        name: Axiom name recorded in the result
        lhs, rhs: sympy matrices of identical shape
        source_dims: factor dimensions of the source tensor basis (column index
            decoding, lexicographic order)
        labels: optional formatter turning the decoded basis tuple into a label

    Returns:
        CheckResult; on failure the witness names the first basis tensor whose
        images differ together with both image coordinate vectors
    """
    if lhs.shape != rhs.shape:
        return CheckResult(name, False, None, f"shape mismatch {lhs.shape} vs {rhs.shape}")
    diff = lhs - rhs
    for col in range(diff.cols):
        if any(diff[row, col] != 0 for row in range(diff.rows)):
            basis = decode_index(col, source_dims)
            witness = {
                "basis": list(labels(basis)) if labels else list(basis),
                "lhs": format_vector(lhs[:, col]),
                "rhs": format_vector(rhs[:, col]),
            }
            return CheckResult(name, False, witness)
    return CheckResult(name, True)


def compare_vectors(name: str, lhs: Sequence, rhs: Sequence) -> CheckResult:
    """Exact equality of two coordinate vectors; both are recorded on failure."""
    lhs, rhs = list(lhs), list(rhs)
    if lhs == rhs:
        return CheckResult(name, True)
    return CheckResult(name, False, {"lhs": format_vector(lhs), "rhs": format_vector(rhs)})

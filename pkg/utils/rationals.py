"""
Text codec for exact rational scalars ("p/q" or integer strings).
"""

from typing import Iterable, List, Sequence

from sympy import Rational

from utils.errors import InputError


def parse_rational(value, where: str = "value") -> Rational:
    """
    Parse a rational from a JSON scalar.

    Args:
        value: int or string such as "3", "-2/5"
        where: location used in the error message

    Returns:
        Reduced sympy Rational

    Raises:
        InputError: If the value is a float, a bool or not a rational literal
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{where}: expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition('/')
        try:
            numerator = int(num)
            denominator = int(den) if sep else 1
        except ValueError:
            raise InputError(f"{where}: not a rational literal: {value!r}")
        if denominator == 0:
            raise InputError(f"{where}: zero denominator in {value!r}")
        return Rational(numerator, denominator)


def format_rational(value) -> str:
    """Canonical text form: "p/q" with q > 1, or a bare integer."""
    return str(Rational(value))


def parse_vector(values: Iterable, where: str = "vector") -> List[Rational]:
    if not isinstance(values, list):
        raise InputError(f"{where}: expected a list")
    return [parse_rational(v, f"{where}[{i}]") for i, v in enumerate(values)]


def format_vector(values: Sequence) -> List[str]:
    return [format_rational(v) for v in values]

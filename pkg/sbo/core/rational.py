"""Точные рациональные числа: разбор, форматирование и перевод в домен QQ sympy."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ

from sbo.services.validation_service import PreconditionError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Разбирает строку вида "p/q" или целое в несократимую дробь."""

    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    match = _RATIONAL_RE.match(str(text))
    if not match:
        raise PreconditionError(
            f"Ожидалось точное рациональное число вида p/q, получено {text!r}",
            "BAD_RATIONAL",
            hint="используйте, например, 3, -1/2 или 7/4",
        )
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise PreconditionError(f"Нулевой знаменатель в {text!r}", "BAD_RATIONAL")
    return Fraction(num, den)


def parse_real(text: str | float | int | Fraction) -> float:
    """Принимает точную дробь или десятичную запись (для численных команд)."""

    if isinstance(text, (int, float, Fraction)) and not isinstance(text, bool):
        return float(text)
    try:
        return float(parse_rational(text))
    except PreconditionError:
        pass
    try:
        return float(str(text).strip())
    except ValueError as exc:
        raise PreconditionError(
            f"Ожидалось число (p/q или десятичная запись), получено {text!r}", "BAD_REAL"
        ) from exc


def format_rational(value: Fraction | int) -> str:
    """Каноническая строка: "3", "-1/2"."""

    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def to_qq(value: Fraction | int) -> Any:
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def from_qq(value: Any) -> Fraction:
    return Fraction(int(QQ.numer(value)), int(QQ.denom(value)))


def is_integer(value: Fraction) -> bool:
    return Fraction(value).denominator == 1

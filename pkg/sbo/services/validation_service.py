"""Исключения предметной области и проверка входных параметров."""

from __future__ import annotations

from fractions import Fraction
from typing import Any


class SboError(Exception):
    """Базовое исключение с машинным кодом и подсказкой для пользователя."""

    exit_code: int = 1

    def __init__(self, message: str, error_code: str = "SBO_ERROR", hint: str = ""):
        self.message = message
        self.error_code = error_code
        self.hint = hint
        super().__init__(message)


class PreconditionError(SboError):
    """Нарушено предусловие операции (код выхода 2)."""

    exit_code = 2

    def __init__(self, message: str, error_code: str = "PRECONDITION", hint: str = ""):
        super().__init__(message, error_code, hint)


class VariableMismatchError(PreconditionError):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "VARIABLE_MISMATCH", hint)


class NotSingularError(PreconditionError):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "NOT_SINGULAR", hint)


class LocusError(PreconditionError):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "DIFF_LOCUS", hint)


class ConvergenceDomainError(PreconditionError):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "CONVERGENCE_DOMAIN", hint)


class QuadratureError(PreconditionError):
    """Квадратура не сошлась с заданной точностью."""

    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "QUADRATURE", hint)


class DescriptorError(PreconditionError):
    def __init__(self, message: str, hint: str = ""):
        super().__init__(message, "DESCRIPTOR", hint)


def require_natural(value: Any, name: str) -> int:
    """Возвращает value как неотрицательное целое или бросает PreconditionError."""

    if isinstance(value, bool):
        raise PreconditionError(f"{name} должно быть натуральным числом, получено {value!r}", "NOT_NATURAL")
    if isinstance(value, Fraction):
        if value.denominator != 1:
            raise PreconditionError(f"{name} должно быть целым, получено {value}", "NOT_NATURAL")
        value = value.numerator
    if not isinstance(value, int) or value < 0:
        raise PreconditionError(f"{name} должно быть натуральным числом, получено {value!r}", "NOT_NATURAL")
    return value

"""Гамма-нормировки Ã = A/(Γ((λ+ν−n+1)/2)·Γ((λ−ν)/2)) и Ã̃ = Γ((λ−ν)/2)·Ã."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Sequence, Tuple

from scipy.special import rgamma

from sbo.config.kernel_config import KernelConfig
from sbo.kernel.bumps import TestFunction
from sbo.kernel.quadrature import KernelResult, kernel_eval
from sbo.services.validation_service import PreconditionError


def _reciprocal_gamma(arg: Fraction | float) -> float:
    """1/Γ(arg); в полюсах Γ (неположительные целые) ровно 0."""

    if isinstance(arg, Fraction):
        if arg.denominator == 1 and arg <= 0:
            return 0.0
        arg = float(arg)
    return float(rgamma(arg))


def normalization(lam: Fraction | float, nu: Fraction | float, n: int) -> Tuple[float, float]:
    """Возвращает (tilde_factor, renorm_factor)."""

    exact = isinstance(lam, (Fraction, int)) and isinstance(nu, (Fraction, int))
    if exact:
        first = (Fraction(lam) + Fraction(nu) - n + 1) / 2
        second = (Fraction(lam) - Fraction(nu)) / 2
    else:
        first = (float(lam) + float(nu) - n + 1) / 2
        second = (float(lam) - float(nu)) / 2
    renorm = _reciprocal_gamma(first)
    return renorm * _reciprocal_gamma(second), renorm


def kernel_eval_normalized(
    cfg: KernelConfig,
    f: TestFunction,
    y: Sequence[float] | None = None,
    variant: Literal["tilde", "renorm"] = "tilde",
) -> KernelResult:
    """Значение Ã f (variant="tilde") или Ã̃ f (variant="renorm")."""

    if variant not in ("tilde", "renorm"):
        raise PreconditionError(f"Неизвестная нормировка {variant!r}", "BAD_VARIANT", hint="tilde или renorm")
    tilde, renorm = normalization(cfg.lam, cfg.nu, cfg.n)
    factor = tilde if variant == "tilde" else renorm
    raw = kernel_eval(cfg, f, y)
    return KernelResult(
        value=raw.value * factor,
        error_estimate=raw.error_estimate * abs(factor),
        cells=raw.cells,
        estimates=tuple(v * factor for v in raw.estimates),
    )

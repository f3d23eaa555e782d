"""Численная проверка A ∘ dπ_λ(X) = dπ′_ν(X) ∘ A на сетке точек y."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from sbo.config.kernel_config import KernelConfig
from sbo.kernel.bumps import BumpFunction, GeneratorImage
from sbo.kernel.quadrature import kernel_value
from sbo.models.conformal import ConfGenerator, subalgebra_basis
from sbo.services.validation_service import PreconditionError

logger = logging.getLogger(__name__)

DEFAULT_OFFSETS = (-0.5, -0.25, 0.0, 0.25, 0.5)
# Шаг пятиточечного шаблона для производных A f по y.
DEFAULT_STEP = 0.05
_STENCIL = ((-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0))


@dataclass(frozen=True)
class EquivarianceResult:
    generator: str
    residual: float
    max_abs_difference: float
    norm: float
    samples: int

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "residual": self.residual,
            "max_abs_difference": self.max_abs_difference,
            "norm": self.norm,
            "samples": self.samples,
        }


def default_y_grid(cfg: KernelConfig) -> List[np.ndarray]:
    base = np.asarray(cfg.y_point(), dtype=float)
    return [base + np.asarray(shift) for shift in itertools.product(DEFAULT_OFFSETS, repeat=cfg.n - 1)]


def _subalgebra_action(X: ConfGenerator, nu: float, y: np.ndarray, value: float, grad: np.ndarray) -> float:
    if X.kind == "T":
        return float(grad[X.j - 1])
    if X.kind == "R":
        i, j = X.i - 1, X.j - 1
        return float(y[i] * grad[j] - y[j] * grad[i])
    euler = float(np.dot(y, grad))
    if X.kind == "D":
        return euler + nu * value
    j = X.j - 1
    return float(np.dot(y, y) * grad[j] - 2.0 * y[j] * euler - 2.0 * nu * y[j] * value)


def numeric_equivariance(
    cfg: KernelConfig,
    X: ConfGenerator,
    f: BumpFunction,
    y_points: Sequence[Sequence[float]] | None = None,
    step: float = DEFAULT_STEP,
) -> EquivarianceResult:
    """max_y |A(dπ_λ(X)f)(y) − dπ′_ν(X)(Af)(y)| / max_y |Af(y)|."""

    cfg.require_convergent()
    if X not in subalgebra_basis(cfg.n):
        raise PreconditionError(f"{X} не лежит в подалгебре o({cfg.n},1)", "NOT_IN_SUBALGEBRA")
    level = cfg.final_level
    image = GeneratorImage(X, cfg.lam, f)
    ys = [np.asarray(y, dtype=float) for y in y_points] if y_points is not None else default_y_grid(cfg)

    max_diff, norm = 0.0, 0.0
    for y in ys:
        value, _ = kernel_value(cfg, f, y, level)
        grad = np.zeros(cfg.n - 1)
        for k in range(cfg.n - 1):
            shift = np.zeros(cfg.n - 1)
            shift[k] = step
            acc = 0.0
            for offset, weight in _STENCIL:
                acc += weight * kernel_value(cfg, f, y + offset * shift, level)[0]
            grad[k] = acc / (12.0 * step)
        lhs, _ = kernel_value(cfg, image, y, level)
        rhs = _subalgebra_action(X, cfg.nu, y, value, grad)
        max_diff = max(max_diff, abs(lhs - rhs))
        norm = max(norm, abs(value))

    residual = max_diff / norm if norm > 0 else 0.0
    logger.info("Эквивариантность %s: невязка %.3e (норма %.3e)", X, residual, norm)
    return EquivarianceResult(
        generator=X.tag, residual=residual, max_abs_difference=max_diff, norm=norm, samples=len(ys)
    )

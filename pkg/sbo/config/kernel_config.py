"""Конфигурация численного интегрального оператора (валидируется pydantic)."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Dict, List

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from sbo.config.settings import Settings
from sbo.services.validation_service import ConvergenceDomainError, PreconditionError

logger = logging.getLogger(__name__)


class ModulationTerm(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    coeff: float = 1.0
    exps: List[int]


class BumpSpec(BaseModel):
    """Гладкая функция с компактным носителем: P(x)·exp(−1/(1 − |x−c|²/r²))."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    center: List[float]
    radius: float = Field(default=1.0, gt=0)
    modulation: List[ModulationTerm] | None = None

    def terms(self) -> List[ModulationTerm]:
        if self.modulation is None:
            return [ModulationTerm(coeff=1.0, exps=[0] * len(self.center))]
        return list(self.modulation)


def _settings_default(name: str):
    return lambda: getattr(Settings(), name)


class KernelConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = Field(ge=2)
    lam: float
    nu: float
    points: int = Field(default_factory=_settings_default("KERNEL_POINTS"), ge=1)
    base_level: int = Field(default_factory=_settings_default("KERNEL_BASE_LEVEL"), ge=0)
    levels: int = Field(default_factory=_settings_default("KERNEL_LEVELS"), ge=2)
    tolerance: float = Field(default_factory=_settings_default("KERNEL_TOLERANCE"), gt=0)
    split_radius: float = Field(default_factory=_settings_default("KERNEL_SPLIT_RADIUS"), gt=0)
    bump: BumpSpec | None = None
    y: List[float] | None = None

    @model_validator(mode="after")
    def _check_dimensions(self) -> "KernelConfig":
        if self.bump is not None:
            if len(self.bump.center) != self.n:
                raise ValueError(f"центр носителя должен иметь {self.n} координат")
            for term in self.bump.terms():
                if len(term.exps) != self.n:
                    raise ValueError(f"степени модуляции должны иметь {self.n} компонент")
        if self.y is not None and len(self.y) != self.n - 1:
            raise ValueError(f"точка y должна иметь {self.n - 1} координат")
        return self

    @property
    def beta(self) -> float:
        """Показатель веса |x_n|^{λ+ν−n}."""

        return self.lam + self.nu - self.n

    def is_convergent(self) -> bool:
        return self.lam > self.nu and self.lam + self.nu > self.n - 1

    def require_convergent(self) -> None:
        if not self.is_convergent():
            raise ConvergenceDomainError(
                f"(λ, ν) = ({self.lam}, {self.nu}) вне области сходимости при n = {self.n}",
                hint="для функций с компактным носителем нужно λ > ν и λ + ν > n − 1",
            )

    def bump_spec(self) -> BumpSpec:
        return self.bump or BumpSpec(center=[0.0] * self.n)

    def y_point(self) -> List[float]:
        return list(self.y) if self.y is not None else [0.0] * (self.n - 1)

    @property
    def final_level(self) -> int:
        return self.base_level + self.levels - 1


def load_kernel_config(path: str | Path | None, overrides: Dict[str, Any]) -> KernelConfig:
    """Читает JSON-конфиг (если задан) и накладывает параметры командной строки."""

    data: Dict[str, Any] = {}
    if path is not None:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise PreconditionError(f"Файл конфигурации {path} не найден", "CONFIG_NOT_FOUND") from exc
        except json.JSONDecodeError as exc:
            raise PreconditionError(f"Некорректный JSON в {path}: {exc}", "CONFIG_INVALID") from exc
        if not isinstance(data, dict):
            raise PreconditionError(f"Конфигурация {path} должна быть JSON-объектом", "CONFIG_INVALID")
    data.update({k: v for k, v in overrides.items() if v is not None})
    try:
        cfg = KernelConfig(**data)
    except ValidationError as exc:
        raise PreconditionError(f"Некорректная конфигурация ядра: {exc.errors()[0]['msg']}", "CONFIG_INVALID") from exc
    logger.debug("Конфигурация ядра: %s", cfg.model_dump())
    return cfg

"""
Квадратура интегрального оператора
    (A_{λ,ν} f)(y) = ∫ |x_n|^{λ+ν−n} (|x'−y|² + x_n²)^{−ν} f(x', x_n) dx' dx_n.

Интеграл берётся в сферических координатах с центром в особой точке (y, 0):
x = (y, 0) + ρθ, θ ∈ S^{n−1}, и подынтегральное выражение распадается на
ρ^{λ−ν−1} · |θ_n|^{λ+ν−n} · f. Степенной вес у ρ = 0 и у экватора θ_n = 0
интегрируется точно правилом Гаусса–Якоби на примыкающей ячейке, остальные
ячейки считаются составным правилом Гаусса–Лежандра с явным весом.
Радиальный отрезок режется по ρ = split; каждый кусок и каждая угловая
координата делятся на 2^L равных подотрезков. Порядок суммирования фиксирован.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import roots_jacobi

from sbo.config.kernel_config import KernelConfig
from sbo.kernel.bumps import TestFunction
from sbo.services.validation_service import QuadratureError

logger = logging.getLogger(__name__)

# Порог, ниже которого абсолютная погрешность считается нулевой.
ABS_FLOOR = 1e-12
# Разности ниже этой доли значения неотличимы от ошибок округления.
ROUNDOFF = 1e-13
_CHUNK_POINTS = 200_000


@dataclass(frozen=True)
class KernelResult:
    value: float
    error_estimate: float
    cells: int
    estimates: Tuple[float, ...]

    def differences(self) -> List[float]:
        return [abs(b - a) for a, b in zip(self.estimates, self.estimates[1:])]

    def convergence_ratios(self) -> List[float]:
        """Отношения последовательных разностей; 0, если разность на уровне округления."""

        floor = ROUNDOFF * max(abs(self.value), ABS_FLOOR)
        diffs = self.differences()
        return [b / a if a > floor and b > floor else 0.0 for a, b in zip(diffs, diffs[1:])]

    def to_dict(self) -> dict:
        return {"value": self.value, "error_estimate": self.error_estimate, "cells": self.cells}


@lru_cache(maxsize=32)
def _gauss(points: int) -> Tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(points)


@lru_cache(maxsize=64)
def _jacobi(points: int, exponent: float, at_left: bool) -> Tuple[np.ndarray, np.ndarray]:
    # вес (1 + ξ)^e при особенности слева, (1 − ξ)^e справа
    if at_left:
        return roots_jacobi(points, 0.0, exponent)
    return roots_jacobi(points, exponent, 0.0)


def _breakpoints(lo: float, hi: float, extra: Sequence[float]) -> List[float]:
    inner = sorted({float(x) for x in extra if lo < x < hi})
    return [lo] + inner + [hi]


def _composite(a: float, b: float, level: int, points: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = _gauss(points)
    count = 2**level
    edges = np.linspace(a, b, count + 1)
    half = (edges[1:] - edges[:-1]) / 2.0
    mid = (edges[1:] + edges[:-1]) / 2.0
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def _weighted_composite(
    a: float, b: float, level: int, points: int, exponent: float, singular_at: float
) -> Tuple[np.ndarray, np.ndarray]:
    """Узлы и веса для ∫_a^b |x − s|^e g(x) dx, s ∈ {a, b}; множитель |x − s|^e уже в весах."""

    x, w = _composite(a, b, level, points)
    if exponent == 0.0:
        return x, w
    x = x.copy()
    w = w * np.abs(x - singular_at) ** exponent
    at_left = singular_at == a
    h = (b - a) / 2**level
    nodes, weights = _jacobi(points, float(exponent), at_left)
    start = a if at_left else b - h
    cell = slice(0, points) if at_left else slice(len(x) - points, len(x))
    x[cell] = start + h * (nodes + 1.0) / 2.0
    w[cell] = weights * (h / 2.0) ** (exponent + 1.0)
    return x, w


def _radial_rule(rho_max: float, gamma: float, split: float, level: int, points: int):
    """Узлы по ρ ∈ [0, ρ_max] и веса с множителем ρ^{γ−1}."""

    rs, ws = [], []
    breaks = _breakpoints(0.0, rho_max, (split,))
    for a, b in zip(breaks, breaks[1:]):
        if a == 0.0:
            r, w = _weighted_composite(a, b, level, points, gamma - 1.0, 0.0)
        else:
            r, w = _composite(a, b, level, points)
            w = w * r ** (gamma - 1.0)
        rs.append(r)
        ws.append(w)
    return np.concatenate(rs), np.concatenate(ws), (len(breaks) - 1) * 2**level


def _join(angle: np.ndarray, weights: np.ndarray, inner: np.ndarray, inner_weights: np.ndarray):
    """Точки (sin φ · ω, cos φ) по всем парам (φ, ω) и произведения весов."""

    tangential = np.sin(angle)[:, None, None] * inner[None, :, :]
    polar = np.broadcast_to(np.cos(angle)[:, None, None], (len(angle), len(inner), 1))
    nodes = np.concatenate([tangential, polar], axis=2).reshape(-1, inner.shape[1] + 1)
    return nodes, np.outer(weights, inner_weights).ravel()


def _sphere_rule(dim: int, level: int, points: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Узлы на S^dim ⊂ R^{dim+1} с весами площади; S^0 = {−1, 1}."""

    if dim == 0:
        return np.array([[-1.0], [1.0]]), np.ones(2), 1
    inner, inner_weights, inner_cells = _sphere_rule(dim - 1, level, points)
    chi, w = _composite(0.0, np.pi, level, points)
    nodes, weights = _join(chi, w * np.sin(chi) ** (dim - 1), inner, inner_weights)
    return nodes, weights, inner_cells * 2**level


def _direction_rule(n: int, beta: float, level: int, points: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """Направления θ ∈ S^{n−1} с весами |θ_n|^β dθ, θ_n = cos φ."""

    inner, inner_weights, inner_cells = _sphere_rule(n - 2, level, points)
    equator = np.pi / 2
    phis, ws = [], []
    for a, b in ((0.0, equator), (equator, np.pi)):
        phi, w = _weighted_composite(a, b, level, points, beta, equator)
        # |cos φ| / |φ − π/2| гладкая и положительная на [0, π]
        smooth = (np.abs(np.cos(phi)) / np.abs(phi - equator)) ** beta
        phis.append(phi)
        ws.append(w * smooth * np.sin(phi) ** (n - 2))
    nodes, weights = _join(np.concatenate(phis), np.concatenate(ws), inner, inner_weights)
    return nodes, weights, 2 * 2**level * inner_cells


def kernel_value(cfg: KernelConfig, f: TestFunction, y: Sequence[float], level: int) -> Tuple[float, int]:
    """Одна оценка (A f)(y) на уровне дробления level; возвращает (значение, число ячеек)."""

    n = cfg.n
    pole = np.append(np.asarray(y, dtype=float), 0.0)
    lo, hi = f.support()
    rho_max = float(np.linalg.norm(np.maximum(np.abs(lo - pole), np.abs(hi - pole))))

    directions, wd, direction_cells = _direction_rule(n, cfg.beta, level, cfg.points)
    rho, wr, radial_cells = _radial_rule(rho_max, cfg.lam - cfg.nu, cfg.split_radius, level, cfg.points)

    block = max(1, _CHUNK_POINTS // len(rho))
    total = 0.0
    for start in range(0, len(directions), block):
        theta = directions[start:start + block]
        points = pole + rho[None, :, None] * theta[:, None, :]
        values = f.values(points.reshape(-1, n)).reshape(len(theta), len(rho))
        total += float(np.sum(wd[start:start + block, None] * wr[None, :] * values))
    return total, direction_cells * radial_cells


def kernel_eval(cfg: KernelConfig, f: TestFunction, y: Sequence[float] | None = None) -> KernelResult:
    """(A_{λ,ν} f)(y) с оценкой погрешности |Q_L − Q_{L−1}| по последовательным уровням."""

    cfg.require_convergent()
    y = cfg.y_point() if y is None else list(y)
    estimates = []
    cells = 0
    for level in range(cfg.base_level, cfg.final_level + 1):
        value, cells = kernel_value(cfg, f, y, level)
        estimates.append(value)
        logger.debug("A f(%s), уровень %d: %.15g (%d ячеек)", y, level, value, cells)
    value = estimates[-1]
    error = abs(estimates[-1] - estimates[-2])
    if error > cfg.tolerance * max(abs(value), ABS_FLOOR):
        raise QuadratureError(
            f"Квадратура не сошлась: |ΔQ| = {error:.3e} при значении {value:.6e}",
            hint="увеличьте levels или points в конфигурации",
        )
    return KernelResult(value=value, error_estimate=error, cells=cells, estimates=tuple(estimates))

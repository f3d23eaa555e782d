"""
Пробные функции для численной проверки: гладкие функции с компактным носителем
и их образы под действием образующих o(n+1,1).
"""

from __future__ import annotations

from typing import Protocol, Tuple

import numpy as np

from sbo.config.kernel_config import BumpSpec
from sbo.models.conformal import ConfGenerator


class TestFunction(Protocol):
    __test__ = False

    dim: int

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        """Ограничивающий прямоугольник носителя (lo, hi)."""

    def values(self, points: np.ndarray) -> np.ndarray:
        """Значения в точках формы (N, dim)."""


class BumpFunction:
    """P(x)·ψ(x), ψ = exp(−1/(1 − s)), s = |x − c|²/r²; ψ' = −ψ·∇s/(1 − s)²."""

    def __init__(self, spec: BumpSpec, scale: float = 1.0):
        self.spec = spec
        self.dim = len(spec.center)
        self.center = np.asarray(spec.center, dtype=float)
        self.radius = float(spec.radius)
        self.scale = float(scale)
        self._coeffs = np.array([t.coeff for t in spec.terms()], dtype=float) * self.scale
        self._exps = np.array([t.exps for t in spec.terms()], dtype=int).reshape(len(self._coeffs), self.dim)

    def scaled(self, factor: float) -> "BumpFunction":
        return BumpFunction(self.spec, self.scale * factor)

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.center - self.radius, self.center + self.radius

    def _psi(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        diff = points - self.center
        s = np.einsum("ij,ij->i", diff, diff) / self.radius**2
        inside = s < 1.0
        psi = np.zeros(len(points))
        denom = np.where(inside, 1.0 - s, 1.0)
        psi[inside] = np.exp(-1.0 / denom[inside])
        # ∇ψ = −ψ · 2(x − c)/r² / (1 − s)²
        factor = np.where(inside, -psi / denom**2, 0.0)
        grad = factor[:, None] * (2.0 * diff / self.radius**2)
        return psi, grad

    def _modulation(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        value = np.zeros(len(points))
        grad = np.zeros_like(points, dtype=float)
        for coeff, exps in zip(self._coeffs, self._exps):
            powers = points ** exps
            value += coeff * np.prod(powers, axis=1)
            for k in range(self.dim):
                if exps[k] == 0:
                    continue
                d_exps = exps.copy()
                d_exps[k] -= 1
                grad[:, k] += coeff * exps[k] * np.prod(points ** d_exps, axis=1)
        return value, grad

    def values(self, points: np.ndarray) -> np.ndarray:
        psi, _ = self._psi(points)
        poly, _ = self._modulation(points)
        return poly * psi

    def gradient(self, points: np.ndarray) -> np.ndarray:
        psi, dpsi = self._psi(points)
        poly, dpoly = self._modulation(points)
        return dpoly * psi[:, None] + poly[:, None] * dpsi


class GeneratorImage:
    """dπ_λ(X) f, вычисляемое по точному градиенту f."""

    def __init__(self, generator: ConfGenerator, lam: float, base: BumpFunction):
        generator.validate(base.dim)
        self.generator = generator
        self.lam = float(lam)
        self.base = base
        self.dim = base.dim

    def support(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.base.support()

    def values(self, points: np.ndarray) -> np.ndarray:
        grad = self.base.gradient(points)
        X = self.generator
        if X.kind == "T":
            return grad[:, X.j - 1]
        if X.kind == "R":
            i, j = X.i - 1, X.j - 1
            return points[:, i] * grad[:, j] - points[:, j] * grad[:, i]
        f = self.base.values(points)
        euler = np.einsum("ij,ij->i", points, grad)
        if X.kind == "D":
            return euler + self.lam * f
        j = X.j - 1
        norm2 = np.einsum("ij,ij->i", points, points)
        return norm2 * grad[:, j] - 2.0 * points[:, j] * euler - 2.0 * self.lam * points[:, j] * f

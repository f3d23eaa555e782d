"""
Многочлены Гегенбауэра C_l^α, их перенормировка C̃_l^α и двухпеременное раздутие.

Гамма-отношения сведены к символам Похгаммера:
    C_l^α(t)  = Σ_k (−1)^k (α)_{l−k} (2t)^{l−2k} / ((l−2k)! k!)
    C̃_l^α(t) = Σ_k (−1)^k (α+M)_{l−k−M} (2t)^{l−2k} / ((l−2k)! k!),  M = ⌊(l+1)/2⌋,
так что C_l^α = (α)_M · C̃_l^α.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Mapping, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.polys import ALPHA, ParamLike, from_terms, param, poch, space_ring, specialize_param
from sbo.services.validation_service import require_natural

T_VARS: Tuple[str, ...] = ("t",)
UV_VARS: Tuple[str, ...] = ("u", "v")


def renorm_shift(l: int) -> int:
    """M = ⌊(l+1)/2⌋."""

    return (l + 1) // 2


@dataclass(frozen=True)
class GegenbauerPoly:
    """Коэффициенты при t^{l−2k}, k = 0..⌊l/2⌋, как многочлены от параметров."""

    l: int
    alpha: PolyElement
    renormalized: bool
    coeffs: Tuple[PolyElement, ...]

    def power(self, k: int) -> int:
        return self.l - 2 * k

    def as_dict(self) -> Dict[int, PolyElement]:
        return {self.power(k): c for k, c in enumerate(self.coeffs) if c}

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def degree(self) -> int:
        """Фактическая степень по t (−1 для нулевого многочлена)."""

        return max(self.as_dict(), default=-1)

    def specialize(self, values: Mapping[str, Fraction | int]) -> "GegenbauerPoly":
        return GegenbauerPoly(
            l=self.l,
            alpha=specialize_param(self.alpha, values),
            renormalized=self.renormalized,
            coeffs=tuple(specialize_param(c, values) for c in self.coeffs),
        )

    def as_poly(self) -> PolyElement:
        return from_terms(space_ring(T_VARS), {(p,): c for p, c in self.as_dict().items()})

    def inflate(self) -> PolyElement:
        """t^{l−2k} ↦ u^k v^{l−2k}."""

        return from_terms(space_ring(UV_VARS), {(k, self.power(k)): c for k, c in enumerate(self.coeffs) if c})


def _coefficient(l: int, k: int, pochhammer: PolyElement) -> PolyElement:
    sign = -1 if k % 2 else 1
    scalar = Fraction(sign * 2 ** (l - 2 * k), factorial(l - 2 * k) * factorial(k))
    return param(scalar) * pochhammer


def gegenbauer(l: int, alpha: ParamLike = ALPHA) -> GegenbauerPoly:
    l = require_natural(l, "l")
    alpha = param(alpha)
    coeffs = tuple(_coefficient(l, k, poch(alpha, l - k)) for k in range(l // 2 + 1))
    return GegenbauerPoly(l=l, alpha=alpha, renormalized=False, coeffs=coeffs)


def gegenbauer_renorm(l: int, alpha: ParamLike = ALPHA) -> GegenbauerPoly:
    """Γ(α)/Γ(α+M) · C_l^α без полюсов по α."""

    l = require_natural(l, "l")
    alpha = param(alpha)
    shift = renorm_shift(l)
    coeffs = tuple(
        _coefficient(l, k, poch(alpha + shift, l - k - shift)) for k in range(l // 2 + 1)
    )
    return GegenbauerPoly(l=l, alpha=alpha, renormalized=True, coeffs=coeffs)


def inflate(l: int, alpha: ParamLike = ALPHA) -> PolyElement:
    """C̃_l^α(u, v) = u^{l/2} C̃_l^α(v/√u) как многочлен от (u, v)."""

    return gegenbauer_renorm(l, alpha).inflate()


def vanishing_alphas(l: int) -> Tuple[int, ...]:
    """α, при которых C_l^α ≡ 0: {0, −1, …, −⌊(l−1)/2⌋} для l ≥ 1."""

    if l < 1:
        return ()
    return tuple(-k for k in range((l - 1) // 2 + 1))


def renormalization_factor(l: int, alpha: ParamLike = ALPHA) -> PolyElement:
    """Множитель (α)_M, связывающий C_l^α и C̃_l^α."""

    return poch(alpha, renorm_shift(l))

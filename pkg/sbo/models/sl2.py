"""
Инфинитезимальное действие sl(2) на полиномиальных моделях π_λ и π_λ1 ⊗ π_λ2.

Соглашение: dπ_λ(e) = −∂_z, dπ_λ(h) = −λ − 2z∂_z, dπ_λ(f) = λz + z²∂_z.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.polys import (
    ParamLike,
    constant_value,
    is_constant,
    monomials_up_to,
    param,
    scale,
    space_ring,
    total_degree,
)
from sbo.services.validation_service import VariableMismatchError
from sbo.services.verification import VerificationReport

logger = logging.getLogger(__name__)

Z_VARS: Tuple[str, ...] = ("z",)
Z12_VARS: Tuple[str, ...] = ("z1", "z2")


@dataclass(frozen=True)
class Sl2Element:
    """Элемент sl(2) в базисе e, h, f."""

    c_e: Fraction = Fraction(0)
    c_h: Fraction = Fraction(0)
    c_f: Fraction = Fraction(0)

    def __add__(self, other: "Sl2Element") -> "Sl2Element":
        return Sl2Element(self.c_e + other.c_e, self.c_h + other.c_h, self.c_f + other.c_f)

    def scaled(self, k: Fraction | int) -> "Sl2Element":
        return Sl2Element(self.c_e * k, self.c_h * k, self.c_f * k)

    def bracket(self, other: "Sl2Element") -> "Sl2Element":
        """Коммутатор по структурным константам [e,f] = h, [h,e] = 2e, [h,f] = −2f."""

        eh = self.c_e * other.c_h - self.c_h * other.c_e
        ef = self.c_e * other.c_f - self.c_f * other.c_e
        hf = self.c_h * other.c_f - self.c_f * other.c_h
        return Sl2Element(c_e=-2 * eh, c_h=ef, c_f=-2 * hf)


E = Sl2Element(c_e=Fraction(1))
H = Sl2Element(c_h=Fraction(1))
F = Sl2Element(c_f=Fraction(1))
BASIS: Dict[str, Sl2Element] = {"e": E, "h": H, "f": F}


def z_ring():
    return space_ring(Z_VARS)


def z12_ring():
    return space_ring(Z12_VARS)


def _act_on_variable(X: Sl2Element, lam: ParamLike, poly: PolyElement, idx: int) -> PolyElement:
    space = poly.ring
    z = space.gens[idx]
    dpoly = poly.diff(z)
    lam_c = space.ground_new(param(lam))
    result = space.zero
    if X.c_e:
        result += scale(-dpoly, X.c_e)
    if X.c_h:
        result += scale(-lam_c * poly - 2 * z * dpoly, X.c_h)
    if X.c_f:
        result += scale(lam_c * z * poly + z * z * dpoly, X.c_f)
    return result


def act(X: Sl2Element, lam: ParamLike, poly: PolyElement) -> PolyElement:
    """dπ_λ(X) на многочлене от одной переменной."""

    if poly.ring.ngens != 1:
        raise VariableMismatchError(f"act ожидает многочлен от одной переменной, получено {poly.ring.ngens}")
    return _act_on_variable(X, lam, poly, 0)


def tensor_act(X: Sl2Element, lam1: ParamLike, lam2: ParamLike, poly: PolyElement) -> PolyElement:
    """(dπ_λ1(X) ⊗ 1 + 1 ⊗ dπ_λ2(X)) на многочлене от (z1, z2)."""

    if poly.ring.ngens != 2:
        raise VariableMismatchError(f"tensor_act ожидает многочлен от двух переменных, получено {poly.ring.ngens}")
    return _act_on_variable(X, lam1, poly, 0) + _act_on_variable(X, lam2, poly, 1)


def check_finite_invariance(m: int, max_degree: int | None = None) -> VerificationReport:
    """Pol_m[z] инвариантно относительно dπ_{−m}: степень образа z^k не превосходит m."""

    report = VerificationReport(name=f"finite_invariance(m={m})")
    space = z_ring()
    top = m if max_degree is None else min(m, max_degree)
    for k in range(top + 1):
        mono = space.gens[0] ** k
        for name, X in BASIS.items():
            image = act(X, -m, mono)
            report.record(total_degree(image) <= m, f"dπ_{{-{m}}}({name}) z^{k} имеет степень {total_degree(image)} > {m}")
    return report


def check_brackets_sl2(lam: ParamLike, max_degree: int) -> VerificationReport:
    """Проверяет [dπ(A), dπ(B)] = dπ([A,B]) для пар базиса на мономах степени ≤ max_degree."""

    report = VerificationReport(name="check_brackets_sl2")
    pairs = (("e", "f"), ("h", "e"), ("h", "f"))
    for mono in monomials_up_to(z_ring(), max_degree):
        for a_name, b_name in pairs:
            A, B = BASIS[a_name], BASIS[b_name]
            lhs = act(A, lam, act(B, lam, mono)) - act(B, lam, act(A, lam, mono))
            rhs = act(A.bracket(B), lam, mono)
            report.record(lhs == rhs, f"[{a_name},{b_name}] на {mono}")

    lam_p = param(lam)
    if is_constant(lam_p):
        value = constant_value(lam_p)
        if value <= 0 and value.denominator == 1:
            report.merge(check_finite_invariance(int(-value), max_degree))
            report.notes.append(f"λ = {value}: проверена инвариантность Pol_{int(-value)}[z]")
    report.log_summary()
    return report

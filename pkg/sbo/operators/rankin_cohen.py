"""
Операторы Ранкина–Коэна и классификация пространств H(λ1, λ2, λ3) для SL(2).

Бидифференциальный оператор хранится в плоской нормальной форме
Σ_l c_l (∂^{a−l} ⊗ ∂^l) с последующим ограничением на диагональ z1 = z2 = z.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Mapping, Sequence, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.linalg import RationalMatrix, poly_span_rank
from sbo.core.polys import (
    L1,
    L2,
    PARAMS,
    check_same_ring,
    ParamLike,
    coeff_from_str,
    coeff_to_str,
    constant_value,
    monomial,
    param,
    param_diff,
    poch,
    poly_diff,
    rename,
    specialize_param,
)
from sbo.core.rational import format_rational
from sbo.models.sl2 import BASIS, act, tensor_act, z12_ring, z_ring
from sbo.services.validation_service import (
    NotSingularError,
    PreconditionError,
    VariableMismatchError,
    require_natural,
)
from sbo.services.verification import VerificationReport

logger = logging.getLogger(__name__)


class OmegaClass(str, Enum):
    NOT_IN_OMEGA = "not_in_omega"
    OMEGA_GENERIC = "omega_generic"
    OMEGA_SINGULAR = "omega_singular"


@dataclass(frozen=True)
class BiDiffOp:
    """Σ_l c_l · (∂^{a−l} ⊗ ∂^l), затем z1 = z2 = z."""

    a: int
    coeffs: Tuple[PolyElement, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.a + 1:
            raise ValueError(f"Ожидалось {self.a + 1} коэффициентов, получено {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, a: int, coeffs: Sequence[ParamLike]) -> "BiDiffOp":
        return cls(a=a, coeffs=tuple(param(c) for c in coeffs))

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def specialize(self, values: Mapping[str, Fraction | int]) -> "BiDiffOp":
        return BiDiffOp(a=self.a, coeffs=tuple(specialize_param(c, values) for c in self.coeffs))

    def coefficient_vector(self) -> List[Fraction]:
        return [constant_value(c) for c in self.coeffs]

    def to_json(self) -> Dict[str, Any]:
        return {"a": self.a, "coeffs": [coeff_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "BiDiffOp":
        a = require_natural(int(data["a"]), "a")
        return cls(a=a, coeffs=tuple(coeff_from_str(str(c)) for c in data["coeffs"]))


def _gap(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> Fraction:
    return Fraction(lam3) - Fraction(lam1) - Fraction(lam2)


def omega_classify(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> OmegaClass:
    """Принадлежность (λ1, λ2, λ3) множествам Ω и Ω_sing."""

    lam1, lam2, lam3 = Fraction(lam1), Fraction(lam2), Fraction(lam3)
    gap = _gap(lam1, lam2, lam3)
    if gap.denominator != 1 or gap < 0 or gap.numerator % 2:
        return OmegaClass.NOT_IN_OMEGA
    integral = all(x.denominator == 1 for x in (lam1, lam2, lam3))
    if integral and lam3 - abs(lam1 - lam2) >= 2 >= lam1 + lam2 + lam3:
        return OmegaClass.OMEGA_SINGULAR
    return OmegaClass.OMEGA_GENERIC


def order_from_weights(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> int:
    """a = (λ3 − λ1 − λ2)/2 для точки из Ω."""

    gap = _gap(lam1, lam2, lam3)
    if gap.denominator != 1 or gap < 0 or gap.numerator % 2:
        raise PreconditionError(
            f"λ3 − λ1 − λ2 = {format_rational(gap)} не является чётным неотрицательным целым",
            "NOT_IN_OMEGA",
        )
    return int(gap) // 2


def rc_operator(lam1: ParamLike = L1, lam2: ParamLike = L2, a: int = 0) -> BiDiffOp:
    """c_l = ((−1)^l / (l!(a−l)!)) · (λ1+a−l)_l · (λ2+l)_{a−l}."""

    a = require_natural(a, "a")
    lam1, lam2 = param(lam1), param(lam2)
    coeffs = []
    for l in range(a + 1):
        sign = -1 if l % 2 else 1
        scalar = Fraction(sign, factorial(l) * factorial(a - l))
        coeffs.append(param(scalar) * poch(lam1 + (a - l), l) * poch(lam2 + l, a - l))
    return BiDiffOp(a=a, coeffs=tuple(coeffs))


def rc_apply(op: BiDiffOp, f1: PolyElement, f2: PolyElement) -> PolyElement:
    """Σ_l c_l f1^{(a−l)} f2^{(l)}."""

    _check_z(f1)
    _check_z(f2)
    check_same_ring(f1, f2)
    result = f1.ring.zero
    for l, coeff in enumerate(op.coeffs):
        if not coeff:
            continue
        term = poly_diff(f1, 0, op.a - l) * poly_diff(f2, 0, l)
        if term:
            result += term * f1.ring.ground_new(coeff)
    return result


def _check_z(poly: PolyElement) -> PolyElement:
    if poly.ring.ngens != 1:
        raise VariableMismatchError("rc_apply ожидает многочлены от одной переменной z")
    return poly


def apply_to_tensor(op: BiDiffOp, poly: PolyElement) -> PolyElement:
    """Применяет оператор к многочлену от (z1, z2) и ограничивает на диагональ."""

    if poly.ring.ngens != 2:
        raise VariableMismatchError("Ожидался многочлен от (z1, z2)")
    result = poly.ring.zero
    for l, coeff in enumerate(op.coeffs):
        if not coeff:
            continue
        term = poly_diff(poly_diff(poly, 0, op.a - l), 1, l)
        if term:
            result += term * poly.ring.ground_new(coeff)
    return rename(result, z_ring(), (0, 0))


def sbo_dim_sl2(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> int:
    cls = omega_classify(lam1, lam2, lam3)
    return {OmegaClass.NOT_IN_OMEGA: 0, OmegaClass.OMEGA_GENERIC: 1, OmegaClass.OMEGA_SINGULAR: 2}[cls]


def _require_singular(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> int:
    lam1, lam2, lam3 = Fraction(lam1), Fraction(lam2), Fraction(lam3)
    if omega_classify(lam1, lam2, lam3) is not OmegaClass.OMEGA_SINGULAR:
        raise NotSingularError(
            f"({lam1}, {lam2}, {lam3}) не лежит в Ω_sing",
            hint="сингулярный базис определён только при λ3 − |λ1 − λ2| ≥ 2 ≥ λ1 + λ2 + λ3",
        )
    if lam1 > 0 or lam2 > 0:
        # Для Ω_sing всегда λ1, λ2 ≤ 0; нарушение означает ошибку в предикате.
        raise NotSingularError(f"Точка Ω_sing с λ1 = {lam1}, λ2 = {lam2} > 0: порядки 1 − λi не натуральны")
    return order_from_weights(lam1, lam2, lam3)


def singular_basis(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> Tuple[BiDiffOp, BiDiffOp]:
    """
    Базис H(λ1, λ2, λ3) в Ω_sing:
    RC_{2−λ1, λ2} ∘ (∂_{z1}^{1−λ1} ⊗ id) и RC_{λ1, 2−λ2} ∘ (id ⊗ ∂_{z2}^{1−λ2}),
    развёрнутые в плоскую форму порядка a.
    """

    a = _require_singular(lam1, lam2, lam3)
    lam1, lam2 = Fraction(lam1), Fraction(lam2)
    k1, k2 = int(1 - lam1), int(1 - lam2)

    first_inner = rc_operator(2 - lam1, lam2, a - k1)
    first = [PARAMS.zero] * (a + 1)
    for l, coeff in enumerate(first_inner.coeffs):
        first[l] = coeff

    second_inner = rc_operator(lam1, 2 - lam2, a - k2)
    second = [PARAMS.zero] * (a + 1)
    for l, coeff in enumerate(second_inner.coeffs):
        second[l + k2] = coeff

    logger.debug("Сингулярный базис в (%s, %s, %s): a=%d, k1=%d, k2=%d", lam1, lam2, lam3, a, k1, k2)
    return BiDiffOp(a=a, coeffs=tuple(first)), BiDiffOp(a=a, coeffs=tuple(second))


def derivative_basis(lam1: Fraction, lam2: Fraction, lam3: Fraction) -> Tuple[BiDiffOp, BiDiffOp]:
    """(∂/∂λ1 RC, ∂/∂λ2 RC) в точке Ω_sing."""

    a = _require_singular(lam1, lam2, lam3)
    symbolic = rc_operator(L1, L2, a)
    point = {"l1": Fraction(lam1), "l2": Fraction(lam2)}
    result = []
    for name in ("l1", "l2"):
        coeffs = tuple(specialize_param(param_diff(c, name), point) for c in symbolic.coeffs)
        result.append(BiDiffOp(a=a, coeffs=coeffs))
    return result[0], result[1]


def basis_rank(ops: Sequence[BiDiffOp]) -> int:
    """Ранг набора операторов одного порядка как векторов коэффициентов."""

    if not ops:
        return 0
    width = max(op.a for op in ops) + 1
    rows = []
    for op in ops:
        vector = op.coefficient_vector()
        rows.append(vector + [Fraction(0)] * (width - len(vector)))
    return RationalMatrix.from_rows(rows, width).rank()


def verify_intertwining(
    op: BiDiffOp,
    lam1: ParamLike,
    lam2: ParamLike,
    lam3: ParamLike,
    max_degree: int,
) -> VerificationReport:
    """op ∘ (dπ_λ1 ⊗ dπ_λ2)(X) = dπ_λ3(X) ∘ op на мономах z1^i z2^j, i + j ≤ max_degree."""

    lam1, lam2, lam3 = param(lam1), param(lam2), param(lam3)
    if lam3 != lam1 + lam2 + 2 * op.a:
        raise PreconditionError(
            f"λ3 = {coeff_to_str(lam3)} не равно λ1 + λ2 + 2a при a = {op.a}",
            "ORDER_MISMATCH",
        )
    report = VerificationReport(name=f"verify_intertwining(a={op.a})")
    space = z12_ring()
    for degree in range(max_degree + 1):
        for i in range(degree + 1):
            mono = monomial(space, (i, degree - i))
            image = apply_to_tensor(op, mono)
            for name, X in BASIS.items():
                lhs = apply_to_tensor(op, tensor_act(X, lam1, lam2, mono))
                rhs = act(X, lam3, image)
                report.record(lhs == rhs, f"X={name} на z1^{i} z2^{degree - i}")
    report.log_summary()
    return report


@dataclass(frozen=True)
class CgComponent:
    a: int
    projector: BiDiffOp
    target_dim: int
    image_rank: int


def _cg_images(m: int, n: int, op: BiDiffOp) -> List[PolyElement]:
    space = z12_ring()
    return [apply_to_tensor(op, monomial(space, (i, j))) for i in range(m + 1) for j in range(n + 1)]


def cg_decompose(m: int, n: int) -> List[CgComponent]:
    """Pol_m ⊗ Pol_n = ⊕_{a=0}^{min(m,n)} Pol_{m+n−2a}: проекторы rc_operator(−m, −n, a)."""

    m, n = require_natural(m, "m"), require_natural(n, "n")
    components = []
    for a in range(min(m, n) + 1):
        op = rc_operator(-m, -n, a)
        images = _cg_images(m, n, op)
        components.append(
            CgComponent(a=a, projector=op, target_dim=m + n - 2 * a + 1, image_rank=poly_span_rank(images))
        )
    return components


def cg_joint_rank(m: int, n: int) -> int:
    """Ранг совокупного отображения Pol_m ⊗ Pol_n → ⊕_a Pol_{m+n−2a}."""

    components = cg_decompose(m, n)
    rows: List[List[Fraction]] = [[] for _ in range((m + 1) * (n + 1))]
    for comp in components:
        top = m + n - 2 * comp.a
        for row, image in zip(rows, _cg_images(m, n, comp.projector)):
            row.extend(constant_value(image.get((k,), PARAMS.zero)) for k in range(top + 1))
    width = len(rows[0]) if rows else 0
    return RationalMatrix.from_rows(rows, width).rank()

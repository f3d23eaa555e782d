"""
Дифференциальные операторы Юля C̃_{λ,ν} = rest_{x_n=0} ∘ C̃_{2l}^{λ−(n−1)/2}(−Δ_{R^{n−1}}, ∂_n)
и классификационные данные для пары O(n+1,1) ↓ O(n,1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, Literal, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.diffops import DiffOp
from sbo.core.polys import (
    ParamLike,
    coeff_to_str,
    constant_value,
    is_constant,
    monomial,
    monomials_up_to,
    param,
    space_ring,
)
from sbo.models.conformal import conf_act, subalgebra_basis, x_ring, x_vars
from sbo.operators.gegenbauer import inflate
from sbo.services.validation_service import LocusError, PreconditionError
from sbo.services.verification import VerificationReport

logger = logging.getLogger(__name__)

UNSPECIFIED = "unspecified"


@dataclass(frozen=True)
class JuhlOp:
    n: int
    lam: PolyElement
    nu: PolyElement
    l: int
    op: DiffOp

    @property
    def nominal_order(self) -> int:
        return 2 * self.l

    def order(self) -> int:
        return self.op.order()

    def normal_order(self) -> int:
        """Наибольшая степень ∂_n среди ненулевых термов."""

        return max((orders[-1] for orders, _ in self.op.terms), default=-1)

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "lambda": coeff_to_str(self.lam),
            "nu": coeff_to_str(self.nu),
            "order": self.order(),
            "normal_order": self.normal_order(),
            "terms": [{"coeff": coeff_to_str(c), "orders": list(k)} for k, c in self.op.terms],
            "restrict": "x_n=0",
        }


def _half_gap(lam: ParamLike, nu: ParamLike) -> int:
    gap = param(nu) - param(lam)
    if not is_constant(gap):
        raise LocusError(f"ν − λ = {gap} не является числом", hint="задайте ν = λ + 2l")
    value = constant_value(gap)
    if value.denominator != 1 or value < 0 or value.numerator % 2:
        raise LocusError(
            f"ν − λ = {value} не лежит в {{0, 2, 4, …}}: дифференциального оператора нет",
            hint="дифференциальные операторы существуют только при ν − λ ∈ 2N",
        )
    return int(value) // 2


def juhl_operator(n: int, lam: ParamLike, nu: ParamLike) -> JuhlOp:
    """Подставляет u = −Δ_{R^{n−1}}, v = ∂_n в раздутый C̃_{2l}^{α}, α = λ − (n−1)/2."""

    if n < 2:
        raise PreconditionError(f"Требуется n ≥ 2, получено {n}", "DIMENSION_TOO_SMALL")
    l = _half_gap(lam, nu)
    lam_p, nu_p = param(lam), param(nu)
    alpha = lam_p - Fraction(n - 1, 2)
    uv_poly = inflate(2 * l, alpha)

    # Символ оператора: многочлен от ξ_1..ξ_n, ξ_j ↔ ∂_j.
    symbols = space_ring(tuple(f"xi{k}" for k in range(1, n + 1)))
    xi = symbols.gens
    laplace = symbols.zero
    for k in range(n - 1):
        laplace += xi[k] * xi[k]
    symbol = symbols.zero
    for (k_u, k_v), coeff in uv_poly.items():
        symbol += (-laplace) ** k_u * xi[n - 1] ** k_v * symbols.ground_new(coeff)

    variables = x_vars(n)
    op = DiffOp.build(variables, dict(symbol.items()), restrict_to=variables[-1])
    juhl = JuhlOp(n=n, lam=lam_p, nu=nu_p, l=l, op=op)
    if juhl.normal_order() < juhl.nominal_order:
        logger.warning(
            "Оператор Юля n=%d λ=%s ν=%s: порядок по ∂_n упал до %d (номинально %d)",
            n,
            coeff_to_str(lam_p),
            coeff_to_str(nu_p),
            juhl.normal_order(),
            juhl.nominal_order,
        )
    return juhl


def juhl_apply(op: JuhlOp, f: PolyElement) -> PolyElement:
    """Применяет оператор к f(x_1..x_n) и полагает x_n = 0."""

    return op.op.apply(f)


def is_l_even(lam: Fraction, nu: Fraction) -> bool:
    lam, nu = Fraction(lam), Fraction(nu)
    if lam.denominator != 1 or nu.denominator != 1:
        return False
    return lam <= nu <= 0 and (lam.numerator - nu.numerator) % 2 == 0


def sbo_dim_conf(lam: Fraction, nu: Fraction) -> int:
    """dim H(λ, ν): 2 на L_even, иначе 1 (никогда 0)."""

    return 2 if is_l_even(lam, nu) else 1


def diff_locus(lam: Fraction, nu: Fraction) -> bool:
    gap = Fraction(nu) - Fraction(lam)
    return gap.denominator == 1 and gap >= 0 and gap.numerator % 2 == 0


def aq_hom_dim(i: int, j: int) -> Literal[0, 1, "unspecified"]:
    """Два известных случая; остальные возвращаются как unspecified."""

    same_parity = (i - j) % 2 == 0
    if i >= j and same_parity:
        return 1
    if i < j and not same_parity:
        return 0
    return UNSPECIFIED


class _MonomialImages:
    """Применяет оператор по линейности, запоминая образы мономов."""

    def __init__(self, op: JuhlOp):
        self.op = op
        self.target = space_ring(op.op.target_variables())
        self._cache: Dict[Tuple[int, ...], PolyElement] = {}

    def __call__(self, f: PolyElement) -> PolyElement:
        result = self.target.zero
        for monom, coeff in f.items():
            image = self._cache.get(monom)
            if image is None:
                image = self._cache[monom] = juhl_apply(self.op, monomial(f.ring, monom))
            result += image * self.target.ground_new(coeff)
        return result


def verify_juhl_equivariance(n: int, lam: ParamLike, nu: ParamLike, max_degree: int) -> VerificationReport:
    """C̃_{λ,ν} ∘ dπ_λ(X) = dπ′_ν(X) ∘ C̃_{λ,ν} для X из подалгебры o(n,1)."""

    op = juhl_operator(n, lam, nu)
    report = VerificationReport(name=f"verify_juhl_equivariance(n={n}, l={op.l})")
    image_of = _MonomialImages(op)
    for mono in monomials_up_to(x_ring(n), max_degree):
        image = image_of(mono)
        for X in subalgebra_basis(n):
            lhs = image_of(conf_act(X, n, lam, mono))
            rhs = conf_act(X, n - 1, nu, image)
            report.record(lhs == rhs, f"{X} на {mono}")
    report.log_summary()
    return report

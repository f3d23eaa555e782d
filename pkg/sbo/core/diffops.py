"""
Дифференциальные операторы с постоянными коэффициентами.

DiffOp хранит отображение «вектор порядков → коэффициент» над списком переменных
и необязательное ограничение на гиперплоскость (одна переменная полагается равной нулю).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.polys import (
    PARAMS,
    ParamLike,
    coeff_to_str,
    param,
    poly_diff,
    restrict,
    space_ring,
    var_names,
)
from sbo.services.validation_service import VariableMismatchError


@dataclass(frozen=True)
class DiffOp:
    variables: Tuple[str, ...]
    terms: Tuple[Tuple[Tuple[int, ...], PolyElement], ...]
    restrict_to: Optional[str] = None
    _lookup: Dict[Tuple[int, ...], PolyElement] = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        variables: Tuple[str, ...],
        terms: Mapping[Tuple[int, ...], ParamLike],
        restrict_to: Optional[str] = None,
    ) -> "DiffOp":
        """Создаёт оператор, отбрасывая нулевые коэффициенты и упорядочивая термы."""

        variables = tuple(variables)
        if restrict_to is not None and restrict_to not in variables:
            raise VariableMismatchError(f"Переменная ограничения {restrict_to!r} не из списка {list(variables)}")
        merged: Dict[Tuple[int, ...], PolyElement] = {}
        for orders, coeff in terms.items():
            if len(orders) != len(variables):
                raise VariableMismatchError(f"Вектор порядков {orders} не согласован с переменными {variables}")
            merged[tuple(orders)] = merged.get(tuple(orders), PARAMS.zero) + param(coeff)
        items = tuple(sorted((k, v) for k, v in merged.items() if v))
        return cls(variables=variables, terms=items, restrict_to=restrict_to, _lookup=dict(items))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        """Порядок оператора (−1 для нулевого)."""

        return max((sum(orders) for orders, _ in self.terms), default=-1)

    def coeff(self, orders: Tuple[int, ...]) -> PolyElement:
        return self._lookup.get(tuple(orders), PARAMS.zero)

    def map_coeffs(self, func) -> "DiffOp":
        return DiffOp.build(self.variables, {k: func(v) for k, v in self.terms}, self.restrict_to)

    def apply_unrestricted(self, f: PolyElement) -> PolyElement:
        if var_names(f.ring) != self.variables:
            raise VariableMismatchError(
                f"Оператор над {list(self.variables)} применён к многочлену от {list(var_names(f.ring))}"
            )
        result = f.ring.zero
        for orders, coeff in self.terms:
            g = f
            for idx, k in enumerate(orders):
                if k:
                    g = poly_diff(g, idx, k)
                if not g:
                    break
            if g:
                result += g * f.ring.ground_new(coeff)
        return result

    def target_variables(self) -> Tuple[str, ...]:
        if self.restrict_to is None:
            return self.variables
        return tuple(v for v in self.variables if v != self.restrict_to)

    def apply(self, f: PolyElement) -> PolyElement:
        """Применяет оператор и, если задано, ограничение на гиперплоскость."""

        g = self.apply_unrestricted(f)
        if self.restrict_to is None:
            return g
        return restrict(g, self.restrict_to, space_ring(self.target_variables()))

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "vars": list(self.variables),
            "terms": [{"coeff": coeff_to_str(c), "orders": list(k)} for k, c in self.terms],
        }
        if self.restrict_to is not None:
            data["restrict"] = f"{self.restrict_to}=0"
        return data

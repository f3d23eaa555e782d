"""
Параметрические и пространственные многочлены поверх разреженных колец sympy.

ParamPoly: элемент кольца PARAMS = QQ[l1, l2, lam, nu, alpha] (формальные параметры).
SpacePoly: элемент кольца QQ[params][переменные], список переменных фиксирован кольцом.
Все значения неизменяемы по смыслу: операции возвращают новые многочлены.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy import sympify
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from sbo.core.rational import format_rational, from_qq, parse_rational, to_qq
from sbo.services.validation_service import PreconditionError, VariableMismatchError

logger = logging.getLogger(__name__)

PARAM_NAMES: Tuple[str, ...] = ("l1", "l2", "lam", "nu", "alpha")
PARAMS, L1, L2, LAM, NU, ALPHA = ring(",".join(PARAM_NAMES), QQ)
PARAM_DOMAIN = PARAMS.to_domain()

ParamLike = PolyElement | Fraction | int


def param(value: ParamLike) -> PolyElement:
    """Приводит рациональное число или ParamPoly к элементу PARAMS."""

    if isinstance(value, PolyElement):
        if value.ring != PARAMS:
            raise VariableMismatchError(f"Ожидался многочлен от параметров {PARAM_NAMES}, получено кольцо {value.ring}")
        return value
    if isinstance(value, bool):
        raise PreconditionError(f"Недопустимый параметр {value!r}", "BAD_PARAMETER")
    if isinstance(value, (int, Fraction)):
        return PARAMS.ground_new(to_qq(value))
    raise PreconditionError(f"Недопустимый параметр {value!r}", "BAD_PARAMETER")


def is_constant(value: PolyElement) -> bool:
    return all(not any(monom) for monom in value.keys())


def constant_value(value: ParamLike) -> Fraction:
    """Значение постоянного ParamPoly как Fraction."""

    value = param(value)
    if not value:
        return Fraction(0)
    if not is_constant(value):
        raise PreconditionError(f"Ожидалась константа, получен многочлен {value}", "NOT_CONSTANT")
    return from_qq(value.coeff(1))


def specialize_param(value: ParamLike, values: Mapping[str, Fraction | int]) -> PolyElement:
    """Подставляет рациональные значения параметров (гомоморфизм вычисления)."""

    result = param(value)
    for name, point in values.items():
        if name not in PARAM_NAMES:
            raise VariableMismatchError(f"Неизвестный параметр {name!r}")
        result = result.subs(PARAMS.gens[PARAM_NAMES.index(name)], to_qq(point))
    return result


def param_diff(value: ParamLike, name: str) -> PolyElement:
    if name not in PARAM_NAMES:
        raise VariableMismatchError(f"Неизвестный параметр {name!r}")
    return param(value).diff(PARAMS.gens[PARAM_NAMES.index(name)])


def poch(base: ParamLike, k: int) -> PolyElement:
    """Возрастающий факториал base·(base+1)···(base+k−1); poch(b, 0) = 1."""

    if k < 0:
        raise PreconditionError(f"Порядок символа Похгаммера должен быть ≥ 0, получено {k}", "NOT_NATURAL")
    base = param(base)
    result = PARAMS.one
    for i in range(k):
        result = result * (base + i)
    return result


def space_ring(names: Sequence[str]) -> PolyRing:
    """Кольцо пространственных многочленов с коэффициентами из PARAMS (кешируется sympy)."""

    names = tuple(names)
    clash = set(names) & set(PARAM_NAMES)
    if clash:
        raise VariableMismatchError(f"Имена переменных совпадают с параметрами: {sorted(clash)}")
    return ring(",".join(names), PARAM_DOMAIN)[0]


def var_names(space: PolyRing) -> Tuple[str, ...]:
    return tuple(str(symbol) for symbol in space.symbols)


def var_index(space: PolyRing, var: str | int) -> int:
    names = var_names(space)
    if isinstance(var, int):
        if 0 <= var < len(names):
            return var
    elif var in names:
        return names.index(var)
    raise VariableMismatchError(f"Переменная {var!r} отсутствует в списке {list(names)}")


def from_terms(space: PolyRing, terms: Mapping[Tuple[int, ...], ParamLike]) -> PolyElement:
    return space.from_dict({tuple(monom): param(coeff) for monom, coeff in terms.items()})


def monomial(space: PolyRing, exps: Sequence[int], coeff: ParamLike = 1) -> PolyElement:
    if len(exps) != space.ngens:
        raise VariableMismatchError(f"Длина вектора степеней {len(exps)} не равна числу переменных {space.ngens}")
    return from_terms(space, {tuple(exps): coeff})


def constant(space: PolyRing, coeff: ParamLike) -> PolyElement:
    return space.ground_new(param(coeff))


def check_same_ring(a: PolyElement, b: PolyElement) -> None:
    if a.ring != b.ring:
        raise VariableMismatchError(
            f"Разные списки переменных: {list(var_names(a.ring))} и {list(var_names(b.ring))}"
        )


def poly_mul(a: PolyElement, b: PolyElement) -> PolyElement:
    check_same_ring(a, b)
    return a * b


def poly_diff(f: PolyElement, var: str | int, order: int = 1) -> PolyElement:
    """Частная производная заданного порядка."""

    if order < 0:
        raise PreconditionError(f"Порядок производной должен быть ≥ 0, получено {order}", "NOT_NATURAL")
    gen = f.ring.gens[var_index(f.ring, var)]
    for _ in range(order):
        if not f:
            break
        f = f.diff(gen)
    return f


def scale(f: PolyElement, coeff: ParamLike) -> PolyElement:
    return f * f.ring.ground_new(param(coeff))


def map_coeffs(f: PolyElement, func) -> PolyElement:
    return f.ring.from_dict({monom: func(coeff) for monom, coeff in f.items()})


def specialize(f: PolyElement, values: Mapping[str, Fraction | int]) -> PolyElement:
    return map_coeffs(f, lambda coeff: specialize_param(coeff, values))


def restrict(f: PolyElement, var: str | int, target: PolyRing) -> PolyElement:
    """Ограничение на гиперплоскость var = 0 с удалением переменной."""

    idx = var_index(f.ring, var)
    if target.ngens != f.ring.ngens - 1:
        raise VariableMismatchError("Целевое кольцо должно содержать на одну переменную меньше")
    terms: Dict[Tuple[int, ...], Any] = {}
    for monom, coeff in f.items():
        if monom[idx] == 0:
            terms[monom[:idx] + monom[idx + 1:]] = coeff
    return target.from_dict(terms)


def rename(f: PolyElement, target: PolyRing, mapping: Sequence[int]) -> PolyElement:
    """Переносит многочлен в другое кольцо: переменная i переходит в переменную mapping[i]."""

    terms: Dict[Tuple[int, ...], Any] = {}
    for monom, coeff in f.items():
        exps = [0] * target.ngens
        for i, e in enumerate(monom):
            exps[mapping[i]] += e
        key = tuple(exps)
        terms[key] = terms.get(key, PARAMS.zero) + coeff
    return target.from_dict(terms)


def total_degree(f: PolyElement) -> int:
    """Полная степень; для нулевого многочлена −1."""

    return max((sum(monom) for monom in f.keys()), default=-1)


def monomials_up_to(space: PolyRing, max_degree: int) -> List[PolyElement]:
    """Все мономы полной степени ≤ max_degree в детерминированном порядке."""

    exps = [
        e for e in itertools.product(range(max_degree + 1), repeat=space.ngens) if sum(e) <= max_degree
    ]
    exps.sort(key=lambda e: (sum(e), e))
    return [monomial(space, e) for e in exps]


def coeff_to_str(coeff: ParamLike) -> str:
    coeff = param(coeff)
    if is_constant(coeff):
        return format_rational(constant_value(coeff))
    return str(coeff)


def coeff_from_str(text: str) -> PolyElement:
    try:
        return param(parse_rational(text))
    except PreconditionError:
        pass
    try:
        return PARAMS.from_expr(sympify(text))
    except Exception as exc:
        raise PreconditionError(f"Не удалось разобрать коэффициент {text!r}", "BAD_COEFFICIENT") from exc


def to_json(f: PolyElement) -> Dict[str, Any]:
    """Канонический JSON: термы отсортированы лексикографически по вектору степеней."""

    terms = sorted(f.items(), key=lambda item: item[0])
    return {
        "vars": list(var_names(f.ring)),
        "terms": [{"coeff": coeff_to_str(coeff), "exps": list(monom)} for monom, coeff in terms],
    }


def from_json(data: Mapping[str, Any]) -> PolyElement:
    space = space_ring(data["vars"])
    terms: Dict[Tuple[int, ...], PolyElement] = {}
    for term in data.get("terms", []):
        terms[tuple(int(e) for e in term["exps"])] = coeff_from_str(str(term["coeff"]))
    return from_terms(space, terms)


def as_fraction_rows(polys: Iterable[PolyElement]) -> Tuple[List[Tuple[int, ...]], List[List[Fraction]]]:
    """Векторы коэффициентов постоянных многочленов по объединению мономов."""

    polys = list(polys)
    monoms = sorted({monom for f in polys for monom in f.keys()})
    rows = [[constant_value(f.get(monom, PARAMS.zero)) for monom in monoms] for f in polys]
    return monoms, rows

"""
Инфинитезимальное действие o(n+1,1) на многочленах на R^n (N-картина I(λ))
и подалгебра o(n,1), сохраняющая гиперплоскость x_n = 0.

Реализация:
    T_j = ∂_j,  R_ij = x_i∂_j − x_j∂_i,  D = E + λ,  C_j = |x|²∂_j − 2x_j E − 2λx_j,
где E = Σ_k x_k∂_k.
"""

from __future__ import annotations

import logging
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from sympy.polys.rings import PolyElement

from sbo.core.polys import ParamLike, monomials_up_to, param, restrict, space_ring
from sbo.services.validation_service import PreconditionError, VariableMismatchError
from sbo.services.verification import VerificationReport

logger = logging.getLogger(__name__)

_TAG_RE = re.compile(r"^(?:(T|C)(\d)|R(\d)(\d)|D)$")

LieElement = Dict["ConfGenerator", Fraction]


@dataclass(frozen=True, order=True)
class ConfGenerator:
    """Образующая: kind ∈ {T, R, D, C}; для R индексы i < j, для T и C используется j."""

    kind: str
    i: int = 0
    j: int = 0

    @property
    def tag(self) -> str:
        if self.kind == "D":
            return "D"
        if self.kind == "R":
            return f"R{self.i}{self.j}"
        return f"{self.kind}{self.j}"

    @classmethod
    def parse(cls, tag: str) -> "ConfGenerator":
        match = _TAG_RE.match(tag.strip())
        if not match:
            raise PreconditionError(f"Неизвестная образующая {tag!r}", "BAD_GENERATOR", hint="формат: T1, R12, D, C3")
        if match.group(1):
            return cls(kind=match.group(1), j=int(match.group(2)))
        if match.group(3):
            i, j = int(match.group(3)), int(match.group(4))
            if i >= j:
                raise PreconditionError(f"Для вращения требуется i < j, получено {tag!r}", "BAD_GENERATOR")
            return cls(kind="R", i=i, j=j)
        return cls(kind="D")

    def validate(self, n: int) -> None:
        indices = [self.j] if self.kind in ("T", "C") else ([self.i, self.j] if self.kind == "R" else [])
        for index in indices:
            if not 1 <= index <= n:
                raise PreconditionError(
                    f"Индекс образующей {self.tag} вне диапазона 1..{n}", "INDEX_OUT_OF_RANGE"
                )

    def __str__(self) -> str:
        return self.tag


def T(j: int) -> ConfGenerator:
    return ConfGenerator("T", j=j)


def C(j: int) -> ConfGenerator:
    return ConfGenerator("C", j=j)


def R(i: int, j: int) -> ConfGenerator:
    return ConfGenerator("R", i=i, j=j)


DILATION = ConfGenerator("D")


def x_vars(n: int) -> Tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, n + 1))


def x_ring(n: int):
    return space_ring(x_vars(n))


def full_basis(n: int) -> List[ConfGenerator]:
    """Базис o(n+1,1): (n+1)(n+2)/2 образующих."""

    gens = [T(j) for j in range(1, n + 1)]
    gens += [R(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    gens.append(DILATION)
    gens += [C(j) for j in range(1, n + 1)]
    return gens


def subalgebra_basis(n: int) -> List[ConfGenerator]:
    """Образующие, сохраняющие гиперплоскость x_n = 0: базис o(n,1)."""

    if n < 2:
        raise PreconditionError(f"Требуется n ≥ 2, получено {n}", "DIMENSION_TOO_SMALL")
    gens = [T(j) for j in range(1, n)]
    gens += [R(i, j) for i in range(1, n) for j in range(i + 1, n)]
    gens.append(DILATION)
    gens += [C(j) for j in range(1, n)]
    return gens


def conf_act(X: ConfGenerator, n: int, lam: ParamLike, f: PolyElement) -> PolyElement:
    """dπ_λ(X) f для f от x_1..x_n."""

    X.validate(n)
    space = f.ring
    if space.ngens != n:
        raise VariableMismatchError(f"Ожидался многочлен от {n} переменных, получено {space.ngens}")
    xs = space.gens
    if X.kind == "T":
        return f.diff(xs[X.j - 1])
    if X.kind == "R":
        i, j = X.i - 1, X.j - 1
        return xs[i] * f.diff(xs[j]) - xs[j] * f.diff(xs[i])

    lam_c = space.ground_new(param(lam))
    euler = space.zero
    for x in xs:
        euler += x * f.diff(x)
    if X.kind == "D":
        return euler + lam_c * f
    j = X.j - 1
    norm2 = space.zero
    for x in xs:
        norm2 += x * x
    return norm2 * f.diff(xs[j]) - 2 * xs[j] * euler - 2 * lam_c * xs[j] * f


def _rotation(i: int, j: int, coeff: Fraction) -> LieElement:
    if i == j:
        return {}
    if i < j:
        return {R(i, j): coeff}
    return {R(j, i): -coeff}


def _add(target: Dict[ConfGenerator, Fraction], source: LieElement) -> None:
    for gen, coeff in source.items():
        target[gen] += coeff


def _bracket_ordered(X: ConfGenerator, Y: ConfGenerator) -> LieElement | None:
    kinds = (X.kind, Y.kind)
    if X.kind == Y.kind and X.kind in ("T", "C", "D"):
        return {}
    if kinds == ("D", "T"):
        return {Y: Fraction(-1)}
    if kinds == ("D", "C"):
        return {Y: Fraction(1)}
    if kinds == ("D", "R"):
        return {}
    if kinds == ("T", "C"):
        result: Dict[ConfGenerator, Fraction] = defaultdict(Fraction)
        if X.j == Y.j:
            result[DILATION] += -2
        _add(result, _rotation(X.j, Y.j, Fraction(2)))
        return result
    if kinds in (("R", "T"), ("R", "C")):
        result = defaultdict(Fraction)
        i, j, k = X.i, X.j, Y.j
        if j == k:
            result[ConfGenerator(Y.kind, j=i)] += 1
        if i == k:
            result[ConfGenerator(Y.kind, j=j)] += -1
        return result
    if kinds == ("R", "R"):
        result = defaultdict(Fraction)
        i, j, k, l = X.i, X.j, Y.i, Y.j
        if j == k:
            _add(result, _rotation(i, l, Fraction(1)))
        if i == l:
            _add(result, _rotation(j, k, Fraction(1)))
        if j == l:
            _add(result, _rotation(i, k, Fraction(-1)))
        if i == k:
            _add(result, _rotation(j, l, Fraction(-1)))
        return result
    return None


def bracket(X: ConfGenerator, Y: ConfGenerator) -> LieElement:
    """Абстрактный коммутатор [X, Y] в базисе образующих (без нулевых компонент)."""

    result = _bracket_ordered(X, Y)
    if result is None:
        result = {gen: -coeff for gen, coeff in (_bracket_ordered(Y, X) or {}).items()}
    return {gen: coeff for gen, coeff in result.items() if coeff}


def act_element(element: LieElement, n: int, lam: ParamLike, f: PolyElement) -> PolyElement:
    """dπ_λ линейной комбинации образующих."""

    result = f.ring.zero
    for gen, coeff in sorted(element.items()):
        result += conf_act(gen, n, lam, f) * f.ring.ground_new(param(coeff))
    return result


def check_brackets_conf(n: int, lam: ParamLike, max_degree: int) -> VerificationReport:
    """[dπ(X), dπ(Y)] = dπ([X,Y]) для всех пар образующих на мономах степени ≤ max_degree."""

    if n < 2:
        raise PreconditionError(f"Требуется n ≥ 2, получено {n}", "DIMENSION_TOO_SMALL")
    report = VerificationReport(name=f"check_brackets_conf(n={n})")
    gens = full_basis(n)
    for mono in monomials_up_to(x_ring(n), max_degree):
        images = {X: conf_act(X, n, lam, mono) for X in gens}
        for a, X in enumerate(gens):
            for Y in gens[a + 1:]:
                lhs = conf_act(X, n, lam, images[Y]) - conf_act(Y, n, lam, images[X])
                rhs = act_element(bracket(X, Y), n, lam, mono)
                report.record(lhs == rhs, f"[{X},{Y}] на {mono}")
    report.log_summary()
    return report


def check_subalgebra_closure(n: int) -> VerificationReport:
    """Коммутаторы образующих подалгебры снова лежат в её линейной оболочке."""

    report = VerificationReport(name=f"subalgebra_closure(n={n})")
    basis = subalgebra_basis(n)
    allowed = set(basis)
    for a, X in enumerate(basis):
        for Y in basis[a + 1:]:
            outside = [str(gen) for gen in bracket(X, Y) if gen not in allowed]
            report.record(not outside, f"[{X},{Y}] содержит {outside}")
    return report


def check_restriction_anchor(n: int, lam: ParamLike, max_degree: int) -> VerificationReport:
    """rest_{x_n=0} ∘ dπ_λ(X) = dπ′_λ(X) ∘ rest_{x_n=0} для X из подалгебры."""

    report = VerificationReport(name=f"restriction_anchor(n={n})")
    source, target = x_ring(n), x_ring(n - 1)
    last = n - 1
    for mono in monomials_up_to(source, max_degree):
        restricted = restrict(mono, last, target)
        for X in subalgebra_basis(n):
            lhs = restrict(conf_act(X, n, lam, mono), last, target)
            rhs = conf_act(X, n - 1, lam, restricted)
            report.record(lhs == rhs, f"{X} на {mono}")
    report.log_summary()
    return report

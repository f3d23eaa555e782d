"""
Дескрипторы пар алгебр Ли: разбор, нормализация и сопоставление с параметрическими образцами.

Грамматика (пробелы игнорируются):
    pairs  := pair ("⊕" pair)*            компоненты прямой суммы пар (также ";")
    pair   := "(" sum "," sum ")" | sum "," sum
    sum    := "0" | term ("+" term)*
    term   := "s(" sum ")" | "diag" ["(" sum ")" | term] | name ["(" arg ("," arg)* ")"] | name "^C"
    arg    := "R" | "C" | линейное выражение от p, q, n, m, k с целыми коэффициентами
Нормализация: so → o, so* → o*, отбрасывание нульмерных слагаемых,
сортировка слагаемых. Нормализация идемпотентна.
"""

from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from sbo.services.validation_service import DescriptorError

logger = logging.getLogger(__name__)

PARAM_SYMBOLS = ("p", "q", "n", "m", "k")
FIELD_MARKERS = ("R", "C")
SIGNATURE_NAMES = ("o", "u", "su", "sp")
WRAPPERS = ("s", "diag")
_RENAMES = {"so": "o", "so*": "o*"}
_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)
_TOKEN_RE = re.compile(r"\s*(?:(⊕|;)|([A-Za-z][A-Za-z0-9_]*\*?)|(\^C)|([0-9]+)|([()+,\-*]))")


@dataclass(frozen=True)
class Term:
    name: str
    args: Tuple[object, ...] = ()
    inner: Optional[Tuple["Term", ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(a if isinstance(a, str) else sympy.sympify(a) for a in self.args))

    @property
    def is_wrapper(self) -> bool:
        return self.name in WRAPPERS

    def render(self) -> str:
        if self.is_wrapper:
            if self.inner is None:
                return self.name
            return f"{self.name}({render_sum(self.inner)})"
        if not self.args:
            return self.name
        return f"{self.name}({','.join(_render_arg(a) for a in self.args)})"


@dataclass(frozen=True)
class PairDescriptor:
    g: Tuple[Term, ...]
    h: Tuple[Term, ...]

    def render(self) -> str:
        return f"({render_sum(self.g)}, {render_sum(self.h)})"


@dataclass(frozen=True)
class Solution:
    """Найденные значения параметров образца и условия, которые нельзя проверить."""

    binding: Dict[str, object] = field(default_factory=dict)
    assumed: Tuple[str, ...] = ()


def _render_arg(arg: object) -> str:
    if isinstance(arg, str):
        return arg
    return str(arg).replace(" ", "")


def render_sum(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    return "+".join(t.render() for t in terms)


class _Parser:
    def __init__(self, text: str, prefix: str = ""):
        self.text = text
        self.prefix = prefix
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _tokenize(self, text: str) -> List[str]:
        tokens, pos = [], 0
        text = text.strip()
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if not match or match.end() == pos:
                raise DescriptorError(f"Не удалось разобрать дескриптор {text!r} около позиции {pos}")
            tokens.append(match.group(0).strip())
            pos = match.end()
        return [t for t in tokens if t]

    def peek(self, offset: int = 0) -> Optional[str]:
        index = self.pos + offset
        return self.tokens[index] if index < len(self.tokens) else None

    def take(self, expected: Optional[str] = None) -> str:
        token = self.peek()
        if token is None or (expected is not None and token != expected):
            raise DescriptorError(
                f"В дескрипторе {self.text!r} ожидалось {expected or 'продолжение'}, получено {token!r}",
                hint="пример: (sl(n+1,R), gl(n,R))",
            )
        self.pos += 1
        return token

    def at_end(self) -> bool:
        return self.pos >= len(self.tokens)

    def parse_pairs(self) -> List[PairDescriptor]:
        pairs = [self.parse_pair()]
        while self.peek() in ("⊕", ";"):
            self.take()
            pairs.append(self.parse_pair())
        if not self.at_end():
            raise DescriptorError(f"Лишние символы в дескрипторе {self.text!r}: {self.tokens[self.pos:]}")
        return pairs

    def parse_pair(self) -> PairDescriptor:
        if self.peek() == "(":
            self.take("(")
            g = self.parse_sum()
            self.take(",")
            h = self.parse_sum()
            self.take(")")
        else:
            g = self.parse_sum()
            self.take(",")
            h = self.parse_sum()
        return PairDescriptor(g=tuple(g), h=tuple(h))

    def parse_sum(self) -> List[Term]:
        if self.peek() == "0":
            self.take()
            return []
        terms = [self.parse_term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.parse_term())
        return terms

    def parse_term(self) -> Term:
        name = self.take()
        if not re.match(r"^[A-Za-z]", name):
            raise DescriptorError(f"Ожидалось имя алгебры, получено {name!r} в {self.text!r}")
        if name == "diag":
            if self.peek() == "(":
                self.take("(")
                inner = self.parse_sum()
                self.take(")")
                return Term("diag", inner=tuple(inner))
            if self.peek() is not None and re.match(r"^[A-Za-z]", self.peek()):
                return Term("diag", inner=(self.parse_term(),))
            return Term("diag")
        if name == "s" and self.peek() == "(":
            self.take("(")
            inner = self.parse_sum()
            self.take(")")
            return Term("s", inner=tuple(inner))
        if name in FIELD_MARKERS:
            return Term(name)
        name = name.lower()
        name = _RENAMES.get(name, name)
        if self.peek() == "^C":
            self.take()
            return Term(name, args=("C",))
        if self.peek() != "(":
            return Term(name)
        self.take("(")
        args = [self.parse_arg()]
        while self.peek() == ",":
            self.take(",")
            args.append(self.parse_arg())
        self.take(")")
        return Term(name, args=tuple(args))

    def parse_arg(self) -> object:
        if self.peek() in FIELD_MARKERS and self.peek(1) in (",", ")"):
            return self.take()
        depth, chunk = 0, []
        while True:
            token = self.peek()
            if token is None:
                raise DescriptorError(f"Незакрытая скобка в {self.text!r}")
            if depth == 0 and token in (",", ")"):
                break
            depth += {"(": 1, ")": -1}.get(token, 0)
            chunk.append(self.take())
        return parse_linear(" ".join(chunk), self.prefix)


def parse_linear(text: str, prefix: str = "") -> sympy.Expr:
    """Линейное выражение с целыми коэффициентами от разрешённых параметров."""

    local = {name: sympy.Symbol(prefix + name, integer=True) for name in PARAM_SYMBOLS}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except Exception as exc:
        raise DescriptorError(f"Некорректное выражение параметра {text!r}") from exc
    allowed = set(local.values())
    if not isinstance(expr, sympy.Expr) or not expr.free_symbols <= allowed:
        raise DescriptorError(f"Недопустимые символы в {text!r}", hint=f"допустимы {', '.join(PARAM_SYMBOLS)}")
    poly = sympy.Poly(expr, *sorted(allowed, key=str)) if expr.free_symbols else None
    if poly is not None and (poly.total_degree() > 1 or not all(c.is_integer for c in poly.coeffs())):
        raise DescriptorError(f"Параметр {text!r} должен быть линейным с целыми коэффициентами")
    if poly is None and not expr.is_integer:
        raise DescriptorError(f"Параметр {text!r} должен быть целым")
    return sympy.expand(expr)


def _is_number(arg: object) -> bool:
    return not isinstance(arg, str) and arg.is_number


def _vanishes(term: Term) -> bool:
    """Нульмерные слагаемые с конкретными параметрами."""

    if term.is_wrapper:
        return term.inner is not None and not term.inner
    if not term.args or not all(_is_number(a) for a in term.args):
        return False
    total = sum(int(a) for a in term.args)
    if term.name == "o":
        return total <= 1
    if term.name == "su":
        return total <= 1
    if term.name in ("u", "sp"):
        return total == 0
    return False


def normalize_sum(terms: Sequence[Term]) -> Tuple[Term, ...]:
    result = []
    for term in terms:
        if term.is_wrapper and term.inner is not None:
            term = Term(term.name, inner=normalize_sum(term.inner))
        if _vanishes(term):
            continue
        result.append(term)
    return tuple(sorted(result, key=Term.render))


def normalize_pair(pair: PairDescriptor) -> PairDescriptor:
    g, h = normalize_sum(pair.g), normalize_sum(pair.h)
    if len(h) == 1 and h[0].name == "diag" and h[0].inner is None:
        if len(g) == 2 and g[0] == g[1]:
            h = (Term("diag", inner=(g[0],)),)
        else:
            raise DescriptorError("Краткая запись diag допустима только для пары вида (g1+g1, diag)")
    return PairDescriptor(g=g, h=h)


def parse_pairs(text: str, prefix: str = "") -> List[PairDescriptor]:
    return [normalize_pair(p) for p in _Parser(text, prefix).parse_pairs()]


def parse_sum_text(text: str, prefix: str = "") -> Tuple[Term, ...]:
    parser = _Parser(text, prefix)
    terms = parser.parse_sum()
    if not parser.at_end():
        raise DescriptorError(f"Лишние символы в дескрипторе {text!r}")
    return normalize_sum(terms)


def normalize_descriptor(text: str) -> str:
    """Каноническая строка дескриптора (пара, сумма пар или одна алгебра)."""

    if _looks_like_pair(_Parser(text).tokens):
        return " ⊕ ".join(sorted(p.render() for p in parse_pairs(text)))
    return render_sum(parse_sum_text(text))


def _looks_like_pair(tokens: Sequence[str]) -> bool:
    if tokens and tokens[0] == "(":
        return True
    depth = 0
    for token in tokens:
        depth += {"(": 1, ")": -1}.get(token, 0)
        if depth == 0 and token in (",", "⊕", ";"):
            return True
    return False


def substitute(terms: Sequence[Term], values: Mapping[sympy.Symbol, object]) -> Tuple[Term, ...]:
    out = []
    for term in terms:
        if term.is_wrapper:
            inner = None if term.inner is None else substitute(term.inner, values)
            out.append(Term(term.name, inner=inner))
        else:
            args = tuple(a if isinstance(a, str) else sympy.expand(a.subs(values)) for a in term.args)
            out.append(Term(term.name, args=args))
    return normalize_sum(out)


# --- сопоставление с образцами ---

Equations = List[sympy.Expr]


def _vanish_alternatives(term: Term) -> List[Equations]:
    if term.is_wrapper or not term.args or any(isinstance(a, str) for a in term.args):
        return []
    args = list(term.args)
    if term.name in ("o", "su"):
        if len(args) == 1:
            return [[args[0]], [args[0] - 1]]
        if len(args) == 2:
            return [[args[0], args[1]], [args[0] - 1, args[1]], [args[0], args[1] - 1]]
    if term.name in ("u", "sp"):
        return [list(args)]
    return []


def _match_term(pattern: Term, query: Term) -> Iterator[Equations]:
    if pattern.name != query.name:
        return
    if pattern.is_wrapper:
        if pattern.inner is None or query.inner is None:
            if pattern.inner is None and query.inner is None:
                yield []
            return
        yield from match_sum(pattern.inner, query.inner)
        return
    if len(pattern.args) != len(query.args):
        return
    orders = [tuple(range(len(query.args)))]
    if pattern.name in SIGNATURE_NAMES and len(query.args) == 2 and not any(isinstance(a, str) for a in query.args):
        orders.append((1, 0))
    for order in orders:
        eqs: Equations = []
        ok = True
        for p_arg, index in zip(pattern.args, order):
            q_arg = query.args[index]
            if isinstance(p_arg, str) or isinstance(q_arg, str):
                if p_arg != q_arg:
                    ok = False
                    break
                continue
            eqs.append(sympy.expand(p_arg - q_arg))
        if ok:
            yield eqs


def match_sum(pattern: Sequence[Term], query: Sequence[Term]) -> Iterator[Equations]:
    """Все способы сопоставить слагаемые (с исчезающими слагаемыми образца)."""

    if not query:
        alternatives = [_vanish_alternatives(t) for t in pattern]
        if any(not alts for alts in alternatives):
            return
        for combo in itertools.product(*alternatives):
            yield [eq for eqs in combo for eq in eqs]
        return
    head, rest = query[0], query[1:]
    for index, candidate in enumerate(pattern):
        remaining = list(pattern[:index]) + list(pattern[index + 1:])
        for eqs in _match_term(candidate, head):
            for more in match_sum(remaining, rest):
                yield eqs + more


def solve_equations(
    eqs: Equations,
    unknowns: Sequence[sympy.Symbol],
    constraints: Sequence[sympy.Basic],
    constraint_texts: Sequence[str],
) -> Optional[Solution]:
    """Решает линейную систему, проверяет целочисленность, неотрицательность и ограничения."""

    residuals = [r for r in (sympy.sympify(e) for e in eqs) if r != 0]
    if any(e.is_number for e in residuals) or (residuals and not unknowns):
        return None
    if residuals:
        solutions = sympy.solve(residuals, list(unknowns), dict=True)
        if not solutions:
            return None
        solution = solutions[0]
    else:
        solution = {}
    check = [sympy.expand(e.subs(solution)) for e in residuals]
    if any(e != 0 for e in check):
        return None
    for value in solution.values():
        if value.is_number and (not value.is_integer or value < 0):
            return None
    assumed = []
    for constraint, text in zip(constraints, constraint_texts):
        verdict = constraint.subs(solution)
        if verdict is sympy.false:
            return None
        if verdict is not sympy.true:
            assumed.append(text)
    binding = {str(sym).split("__")[-1]: solution.get(sym, sym) for sym in unknowns}
    return Solution(binding=binding, assumed=tuple(assumed))


def pattern_symbols(prefix: str, names: Sequence[str]) -> List[sympy.Symbol]:
    return [sympy.Symbol(prefix + name, integer=True) for name in names]


def parse_constraint(text: str, prefix: str) -> sympy.Basic:
    local = {name: sympy.Symbol(prefix + name, integer=True) for name in PARAM_SYMBOLS}
    try:
        return sympy.sympify(text, locals=local)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise DescriptorError(f"Некорректное ограничение {text!r}") from exc


def strip_prefix(text: str) -> str:
    return re.sub(r"[A-Za-z0-9]+__", "", text)


def render_binding(binding: Mapping[str, object]) -> Dict[str, str]:
    return {name: strip_prefix(str(value).replace(" ", "")) for name, value in sorted(binding.items())}

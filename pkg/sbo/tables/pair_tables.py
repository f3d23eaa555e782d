"""
Справочные таблицы пар (g, g'): конечные (PP) и ограниченные (BB) кратности,
комплексные формы и отдельные несимметрические пары.

Данные хранятся в версионированном JSON (sbo/tables/data/pair_tables.json),
путь переопределяется переменной окружения SBO_TABLE_PATH.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import sympy
from pydantic import BaseModel, ConfigDict, Field, ValidationError as PydanticValidationError, model_validator

from sbo.config.settings import Settings
from sbo.services.validation_service import DescriptorError, PreconditionError
from sbo.tables import descriptors as d

logger = logging.getLogger(__name__)

DATA_PATH = Path(__file__).parent / "data" / "pair_tables.json"
SUPPORTED_VERSION = 1
NO_MATCH_NOTE = "no match under implemented normalizations"

COMPACT_CLASSICAL = {"su": 2, "o": 3, "sp": 1}
COMPACT_EXCEPTIONAL = ("g2", "f4", "e6", "e7", "e8")


class TableFilter(str, Enum):
    pp = "pp"
    bb = "bb"
    all = "all"
    annotations = "annotations"


class Predicate(str, Enum):
    none = "none"
    equal = "equal"
    compact = "compact"
    group_compact = "group_compact"


class PairPattern(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    g: str
    h: str
    params: Tuple[str, ...] = ()
    constraints: Tuple[str, ...] = ()


class PairRecord(BaseModel):
    """Семейство пар: образцы дескрипторов или предикат (для A, C, G1)."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    tag: str
    title: str
    predicate: Predicate = Predicate.none
    finite_mult: bool = True
    bounded_mult: bool = False
    patterns: Tuple[PairPattern, ...] = ()

    @model_validator(mode="after")
    def _check_flags(self) -> "PairRecord":
        if self.bounded_mult and not self.finite_mult:
            raise ValueError(f"{self.tag}: ограниченные кратности влекут конечные")
        if self.predicate is Predicate.none and not self.patterns:
            raise ValueError(f"{self.tag}: нужен предикат или хотя бы один образец")
        return self


class ComplexFormRecord(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    g: str
    k: str
    real_form: str
    params: List[str] = Field(default_factory=list)
    constraints: List[str] = Field(default_factory=list)


class Annotation(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    pair: str
    note: str


class PairTable(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    version: int
    families: List[PairRecord]
    complex_forms: List[ComplexFormRecord] = Field(default_factory=list)
    annotations: List[Annotation] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_tags(self) -> "PairTable":
        if self.version != SUPPORTED_VERSION:
            raise ValueError(f"Неподдерживаемая версия таблицы {self.version}, ожидается {SUPPORTED_VERSION}")
        tags = [f.tag for f in self.families]
        if len(tags) != len(set(tags)):
            raise ValueError("Повторяющиеся метки семейств")
        return self

    def pp(self) -> List[PairRecord]:
        return sorted((f for f in self.families if f.finite_mult), key=lambda f: f.tag)

    def bb(self) -> List[PairRecord]:
        return sorted((f for f in self.families if f.bounded_mult), key=lambda f: f.tag)


@dataclass(frozen=True)
class FamilyMatch:
    tag: str
    binding: Dict[str, str] = field(default_factory=dict)
    assumed: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {"family": self.tag, "binding": self.binding, "assumed": list(self.assumed)}


@dataclass(frozen=True)
class ComponentResult:
    pair: str
    matches: Tuple[FamilyMatch, ...]

    @property
    def first(self) -> Optional[FamilyMatch]:
        return self.matches[0] if self.matches else None


@dataclass(frozen=True)
class PairQueryResult:
    """Результат запроса: по компоненте прямой суммы на каждую пару."""

    pair: str
    components: Tuple[ComponentResult, ...]
    bb_tags: frozenset

    @property
    def matched(self) -> Optional[str]:
        if not all(c.first for c in self.components):
            return None
        return "+".join(c.first.tag for c in self.components)

    @property
    def finite_mult(self) -> bool:
        return self.matched is not None

    @property
    def bounded_mult(self) -> bool:
        return all(any(m.tag in self.bb_tags for m in c.matches) for c in self.components)

    def to_dict(self) -> dict:
        result = {
            "pair": self.pair,
            "matched": self.matched,
            "finite_mult": self.finite_mult,
            "bb": self.bounded_mult,
            "components": [
                {"pair": c.pair, "matches": [m.to_dict() for m in c.matches]} for c in self.components
            ],
        }
        if self.matched is None:
            result["note"] = NO_MATCH_NOTE
        return result


@dataclass(frozen=True)
class ComplexFormMatch:
    g: str
    k: str
    real_form: str
    binding: Dict[str, str]
    assumed: Tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "k": self.k,
            "real_form": self.real_form,
            "binding": self.binding,
            "assumed": list(self.assumed),
        }


@lru_cache(maxsize=8)
def _load(path: str) -> PairTable:
    source = Path(path)
    try:
        raw = json.loads(source.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise PreconditionError(f"Файл таблиц не найден: {source}", error_code="TABLE_NOT_FOUND") from exc
    except json.JSONDecodeError as exc:
        raise PreconditionError(f"Файл таблиц {source} не является JSON: {exc}", error_code="TABLE_INVALID") from exc
    try:
        table = PairTable.model_validate(raw)
    except PydanticValidationError as exc:
        raise PreconditionError(f"Некорректная таблица {source}: {exc}", error_code="TABLE_INVALID") from exc
    logger.info("Загружена таблица пар %s (версия %s, семейств %s)", source, table.version, len(table.families))
    return table


def load_tables(path: Optional[str] = None) -> PairTable:
    """Таблица из явного пути, SBO_TABLE_PATH или встроенного файла."""

    chosen = path or Settings().SBO_TABLE_PATH or str(DATA_PATH)
    return _load(str(chosen))


# --- сопоставление ---


@lru_cache(maxsize=256)
def _compiled_pattern(pattern: PairPattern, prefix: str):
    pairs = d.parse_pairs(f"({pattern.g}, {pattern.h})", prefix=prefix)
    unknowns = d.pattern_symbols(prefix, pattern.params)
    constraints = [d.parse_constraint(c, prefix) for c in pattern.constraints]
    return pairs[0], unknowns, constraints


def _match_pattern(pattern: PairPattern, query: d.PairDescriptor, tag: str) -> Optional[FamilyMatch]:
    prefix = f"{tag.lower()}__"
    compiled, unknowns, constraints = _compiled_pattern(pattern, prefix)
    for g_eqs in d.match_sum(compiled.g, query.g):
        for h_eqs in d.match_sum(compiled.h, query.h):
            solution = d.solve_equations(g_eqs + h_eqs, unknowns, constraints, pattern.constraints)
            if solution is not None:
                return FamilyMatch(tag, d.render_binding(solution.binding), solution.assumed)
    return None


def is_compact_simple(terms: Tuple[d.Term, ...]) -> Tuple[bool, Tuple[str, ...]]:
    """Компактная простая алгебра: su(n≥2), o(n≥3, n≠4), sp(n≥1) или компактная особая."""

    if len(terms) != 1:
        return False, ()
    term = terms[0]
    if term.is_wrapper:
        return False, ()
    if term.name in COMPACT_EXCEPTIONAL:
        return not term.args, ()
    minimum = COMPACT_CLASSICAL.get(term.name)
    if minimum is None or len(term.args) != 1 or isinstance(term.args[0], str):
        return False, ()
    arg = term.args[0]
    if arg.is_number:
        value = int(arg)
        return value >= minimum and not (term.name == "o" and value == 4), ()
    return True, (f"{term.render()} compact simple",)


def _match_predicate(record: PairRecord, query: d.PairDescriptor) -> Optional[FamilyMatch]:
    if record.predicate is Predicate.equal:
        return FamilyMatch(record.tag) if query.g == query.h else None
    if record.predicate is Predicate.compact:
        ok, assumed = is_compact_simple(query.g)
        return FamilyMatch(record.tag, assumed=assumed) if ok else None
    if record.predicate is Predicate.group_compact:
        g = query.g
        if len(g) != 2 or g[0] != g[1] or len(query.h) != 1 or query.h[0] != d.Term("diag", inner=(g[0],)):
            return None
        ok, assumed = is_compact_simple((g[0],))
        return FamilyMatch(record.tag, assumed=assumed) if ok else None
    return None


def match_families(query: d.PairDescriptor, records: List[PairRecord]) -> Tuple[FamilyMatch, ...]:
    matches = []
    for record in sorted(records, key=lambda r: r.tag):
        found = _match_predicate(record, query)
        if found is None:
            for pattern in record.patterns:
                found = _match_pattern(pattern, query, record.tag)
                if found is not None:
                    break
        if found is not None:
            matches.append(found)
    return tuple(matches)


def _bind_query(text: str, bindings: Optional[Dict[str, int]]) -> List[d.PairDescriptor]:
    pairs = d.parse_pairs(text)
    if not bindings:
        return pairs
    values = {sympy.Symbol(name, integer=True): sympy.Integer(v) for name, v in bindings.items()}
    return [d.normalize_pair(d.PairDescriptor(d.substitute(p.g, values), d.substitute(p.h, values))) for p in pairs]


def pp_query(text: str, bindings: Optional[Dict[str, int]] = None, table: Optional[PairTable] = None) -> PairQueryResult:
    """Сопоставляет пару (или прямую сумму пар) с семействами PP."""

    table = table or load_tables()
    pairs = _bind_query(text, bindings)
    components = tuple(ComponentResult(p.render(), match_families(p, table.pp())) for p in pairs)
    result = PairQueryResult(
        pair=" ⊕ ".join(c.pair for c in components),
        components=components,
        bb_tags=frozenset(r.tag for r in table.bb()),
    )
    if result.matched is None:
        logger.warning("Пара %s не найдена в таблицах", result.pair)
    return result


def bb_query(text: str, bindings: Optional[Dict[str, int]] = None, table: Optional[PairTable] = None) -> bool:
    return pp_query(text, bindings, table).bounded_mult


def complex_form_lookup(text: str, table: Optional[PairTable] = None) -> Optional[ComplexFormMatch]:
    """Находит строку таблицы комплексных форм по комплексной алгебре g."""

    table = table or load_tables()
    query = d.parse_sum_text(text)
    for index, row in enumerate(table.complex_forms):
        prefix = f"cf{index}__"
        pattern = d.parse_sum_text(row.g, prefix)
        unknowns = d.pattern_symbols(prefix, row.params)
        constraints = [d.parse_constraint(c, prefix) for c in row.constraints]
        for eqs in d.match_sum(pattern, query):
            solution = d.solve_equations(eqs, unknowns, constraints, row.constraints)
            if solution is None:
                continue
            values = {sym: solution.binding[str(sym).split("__")[-1]] for sym in unknowns}
            return ComplexFormMatch(
                g=d.render_sum(query),
                k=d.strip_prefix(d.render_sum(d.substitute(d.parse_sum_text(row.k, prefix), values))),
                real_form=d.strip_prefix(d.render_sum(d.substitute(d.parse_sum_text(row.real_form, prefix), values))),
                binding=d.render_binding(solution.binding),
                assumed=solution.assumed,
            )
    logger.warning("Комплексная форма %s не найдена", text)
    return None


def list_families(kind: TableFilter = TableFilter.pp, table: Optional[PairTable] = None) -> List[PairRecord]:
    table = table or load_tables()
    if kind is TableFilter.bb:
        return table.bb()
    if kind is TableFilter.annotations:
        raise PreconditionError("Аннотации перечисляются через list_annotations", "BAD_FILTER")
    return table.pp()


def list_annotations(table: Optional[PairTable] = None) -> List[Annotation]:
    table = table or load_tables()
    return list(table.annotations)

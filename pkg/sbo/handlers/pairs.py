"""
Команды группы pairs: запросы к таблицам PP/BB и к таблице комплексных форм.
"""

from __future__ import annotations

import argparse
import re
from typing import Any, Dict, List

from sbo.handlers.router import CommandRouter, arg
from sbo.services.validation_service import PreconditionError
from sbo.tables.descriptors import normalize_descriptor
from sbo.tables.pair_tables import (
    TableFilter,
    complex_form_lookup,
    list_annotations,
    list_families,
    pp_query,
)
from sbo.texts import Texts

router = CommandRouter("pairs", help=Texts.GROUP_PAIRS)

_BIND_RE = re.compile(r"^\s*([pqnmk])\s*=\s*(-?\d+)\s*$")


def parse_binding(text: str) -> tuple[str, int]:
    match = _BIND_RE.match(text)
    if not match:
        raise PreconditionError(
            f"Некорректная подстановка {text!r}",
            "BAD_BINDING",
            hint="формат name=value, например n=3",
        )
    return match.group(1), int(match.group(2))


@router.command(
    "query",
    arg("--pair", required=True, help="дескриптор пары, например \"(sl(n+1,R), gl(n,R))\""),
    arg("--bind", type=parse_binding, action="append", default=None, help="подстановка параметра, например n=3"),
    help="Поиск пары в списках PP и BB",
)
def cmd_query(args: argparse.Namespace) -> Dict[str, Any]:
    bindings = dict(args.bind) if args.bind else None
    return pp_query(args.pair, bindings).to_dict()


@router.command(
    "list",
    arg("--filter", dest="kind", type=TableFilter, choices=list(TableFilter), default=TableFilter.pp),
    help="Список семейств (pp, bb, all) или аннотаций",
)
def cmd_list(args: argparse.Namespace) -> Dict[str, Any]:
    if args.kind is TableFilter.annotations:
        return {
            "filter": args.kind.value,
            "annotations": [{"pair": normalize_descriptor(a.pair), "note": a.note} for a in list_annotations()],
        }
    families: List[Dict[str, Any]] = [
        {
            "tag": record.tag,
            "title": record.title,
            "finite_mult": record.finite_mult,
            "bounded_mult": record.bounded_mult,
        }
        for record in list_families(args.kind)
    ]
    return {"filter": args.kind.value, "families": families}


@router.command(
    "complex",
    arg("--g", required=True, help="комплексная простая алгебра, например sl(4,C)"),
    help="Строка таблицы (g, k, g_R) для комплексной пары",
)
def cmd_complex(args: argparse.Namespace) -> Dict[str, Any]:
    match = complex_form_lookup(args.g)
    if match is None:
        return {"g": normalize_descriptor(args.g), "match": None, "note": Texts.NO_COMPLEX_FORM}
    return {"g": match.g, "match": match.to_dict()}

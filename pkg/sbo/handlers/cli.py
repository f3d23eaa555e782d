"""
Точка сборки CLI: дерево argparse из роутеров групп и функция run(argv).

run возвращает (код выхода, текст для stdout); сам ничего не печатает,
чтобы тесты и пакетные скрипты могли вызывать его в процессе.
"""

from __future__ import annotations

import argparse
import json
import logging
from typing import Any, Dict, List, NoReturn, Optional, Sequence, Tuple

from sbo.handlers.conf import router as conf_router
from sbo.handlers.pairs import router as pairs_router
from sbo.handlers.router import CommandRouter
from sbo.handlers.sl2 import router as sl2_router
from sbo.middlewares.errors import ErrorsMiddleware
from sbo.services.validation_service import PreconditionError
from sbo.texts import Texts

logger = logging.getLogger(__name__)

ROUTERS: Tuple[CommandRouter, ...] = (sl2_router, conf_router, pairs_router)
FORMATS = ("json", "text")


class _ParserExit(Exception):
    def __init__(self, status: int, output: str):
        self.status = status
        self.output = output
        super().__init__(output)


class JsonArgumentParser(argparse.ArgumentParser):
    """ArgumentParser без sys.exit: ошибки разбора становятся PreconditionError."""

    def __init__(self, *args: Any, **kwargs: Any):
        super().__init__(*args, **kwargs)
        self._output: List[str] = []

    def _print_message(self, message: str, file: Any = None) -> None:
        if message:
            self._output.append(message)

    def exit(self, status: int = 0, message: Optional[str] = None) -> NoReturn:
        if message:
            self._output.append(message)
        raise _ParserExit(status, "".join(self._output))

    def error(self, message: str) -> NoReturn:
        raise PreconditionError(message, "USAGE", hint=Texts.USAGE_HINT)


def build_parser() -> JsonArgumentParser:
    parser = JsonArgumentParser(prog="sbo", description=Texts.CLI_DESCRIPTION)
    parser.add_argument("--format", choices=FORMATS, default="json", help=Texts.FORMAT_HELP)
    groups = parser.add_subparsers(dest="group", metavar="group", required=True)
    for router in ROUTERS:
        router.attach(groups)
    return parser


def _guess_group(argv: Sequence[str]) -> str:
    names = {router.name for router in ROUTERS}
    return next((token for token in argv if token in names), "none")


def _format_parser() -> JsonArgumentParser:
    parser = JsonArgumentParser(prog="sbo", add_help=False)
    parser.add_argument("--format", choices=FORMATS, default="json")
    return parser


def _output_format(argv: Sequence[str]) -> str:
    """Формат вывода для случаев, когда полный разбор argv не удался."""

    try:
        namespace, _ = _format_parser().parse_known_args(argv)
    except (PreconditionError, _ParserExit):
        return "json"
    return namespace.format


def render(result: Dict[str, Any], fmt: str = "json") -> str:
    """JSON с отсортированными ключами или строки key: value."""

    if fmt == "text":
        lines = []
        for key in sorted(result):
            value = result[key]
            if isinstance(value, (dict, list)):
                value = json.dumps(value, sort_keys=True, ensure_ascii=False)
            elif value is None:
                value = "null"
            lines.append(f"{key}: {value}")
        return "\n".join(lines)
    return json.dumps(result, sort_keys=True, ensure_ascii=False)


def run(argv: Sequence[str]) -> Tuple[int, str]:
    argv = list(argv)
    chosen = {"format": _output_format(argv)}
    parser = build_parser()

    def dispatch(tokens: Sequence[str]) -> Dict[str, Any]:
        try:
            args = parser.parse_args(tokens)
        except _ParserExit as exit_request:
            if exit_request.status:
                raise PreconditionError(exit_request.output.strip(), "USAGE", hint=Texts.USAGE_HINT)
            return {"help": exit_request.output.rstrip("\n")}
        chosen["format"] = args.format
        logger.debug("Команда %s %s: %s", args.group, args.command, vars(args))
        return args.handler(args)

    code, result = ErrorsMiddleware()(dispatch, argv, group=_guess_group(argv))
    return code, render(result, chosen["format"])

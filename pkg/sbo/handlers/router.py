"""
Маршрутизатор команд CLI: группа подкоманд с аргументами argparse.

Каждый модуль обработчиков объявляет router = CommandRouter("group") и
регистрирует функции декоратором @router.command("name", arg(...), ...).
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Tuple

from sbo.metrics import measure

CommandHandler = Callable[[argparse.Namespace], Dict[str, Any]]


@dataclass(frozen=True)
class Argument:
    flags: Tuple[str, ...]
    options: Dict[str, Any]


def arg(*flags: str, **options: Any) -> Argument:
    return Argument(flags=flags, options=options)


@dataclass
class Command:
    name: str
    help: str
    handler: CommandHandler
    arguments: Tuple[Argument, ...]


@dataclass
class CommandRouter:
    name: str
    help: str = ""
    commands: List[Command] = field(default_factory=list)

    def command(self, name: str, *arguments: Argument, help: str = "") -> Callable[[CommandHandler], CommandHandler]:
        def decorator(func: CommandHandler) -> CommandHandler:
            wrapped = measure(self.name, name)(func)
            self.commands.append(Command(name=name, help=help or (func.__doc__ or "").strip(), handler=wrapped, arguments=arguments))
            return func

        return decorator

    def attach(self, subparsers: Any) -> None:
        """Добавляет группу и её подкоманды в дерево argparse."""

        group = subparsers.add_parser(self.name, help=self.help, description=self.help)
        commands = group.add_subparsers(dest="command", metavar="command", required=True)
        for command in self.commands:
            parser = commands.add_parser(command.name, help=command.help, description=command.help)
            for argument in command.arguments:
                parser.add_argument(*argument.flags, **argument.options)
            parser.set_defaults(handler=command.handler)

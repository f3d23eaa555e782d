import time
from functools import wraps
from typing import Any, Callable

from prometheus_client import Counter, Histogram, start_http_server

# Публичные объекты метрик
COMMANDS_TOTAL = Counter(
    "sbo_commands_total",
    "Количество выполненных команд CLI",
    ["group", "command"],
)

COMMAND_ERRORS_TOTAL = Counter(
    "sbo_command_errors_total",
    "Количество команд, завершившихся ошибкой",
    ["group", "error_code"],
)

COMMAND_LATENCY = Histogram(
    "sbo_command_latency_seconds",
    "Время выполнения команд",
    ["group", "command"],
    buckets=(0.01, 0.05, 0.1, 0.5, 1, 5, 30, 120),
)

# Точные проверки тождеств (скобки, сплетение, эквивариантность)
IDENTITY_CHECKS_TOTAL = Counter(
    "sbo_identity_checks_total",
    "Количество проверенных операторных тождеств",
    ["kind", "result"],
)


def start_metrics(port: int) -> None:
    """Запускает HTTP-сервер Prometheus на указанном порту."""
    start_http_server(port)


def record_identity_checks(kind: str, passed: int, failed: int) -> None:
    if passed:
        IDENTITY_CHECKS_TOTAL.labels(kind=kind, result="passed").inc(passed)
    if failed:
        IDENTITY_CHECKS_TOTAL.labels(kind=kind, result="failed").inc(failed)


def measure(group: str, command: str) -> Callable[[Callable[..., Any]], Callable[..., Any]]:
    """Декоратор для сбора метрик по командам.

    - Увеличивает COMMANDS_TOTAL с метками group/command
    - Наблюдает за задержкой в COMMAND_LATENCY
    """

    def decorator(func: Callable[..., Any]) -> Callable[..., Any]:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            COMMANDS_TOTAL.labels(group=group, command=command).inc()
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                COMMAND_LATENCY.labels(group=group, command=command).observe(time.perf_counter() - start)

        return wrapper

    return decorator

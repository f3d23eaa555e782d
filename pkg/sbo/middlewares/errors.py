from __future__ import annotations

import logging
from typing import Any, Callable, Dict, Sequence, Tuple

from sbo.metrics import COMMAND_ERRORS_TOTAL
from sbo.services.validation_service import SboError
from sbo.texts import Texts


logger = logging.getLogger("errors_middleware")

Handler = Callable[[Sequence[str]], Dict[str, Any]]


class ErrorsMiddleware:
    """Переводит исключения команды в код выхода и JSON-объект ошибки."""

    def __call__(self, handler: Handler, argv: Sequence[str], group: str = "none") -> Tuple[int, Dict[str, Any]]:
        try:
            return 0, handler(argv)
        except SboError as e:
            logger.warning("Команда %s отклонена: [%s] %s", group, e.error_code, e.message)
            COMMAND_ERRORS_TOTAL.labels(group=group, error_code=e.error_code).inc()
            return e.exit_code, {"error": e.message, "error_code": e.error_code, "hint": e.hint}
        except Exception:
            logger.exception("Необработанное исключение при выполнении команды")
            COMMAND_ERRORS_TOTAL.labels(group=group, error_code="INTERNAL").inc()
            # Подавляем ошибку: вызывающий код получает код выхода 1
            return 1, {"error": Texts.INTERNAL_ERROR, "error_code": "INTERNAL", "hint": Texts.INTERNAL_ERROR_HINT}

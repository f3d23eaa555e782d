"""
Точка входа CLI `sbo`.

Что делает:
- Загружает конфиг из .env (pydantic-settings).
- Настраивает логирование в stderr (stdout зарезервирован под JSON).
- Инициализирует Sentry, если задан SENTRY_DSN.
- Поднимает метрики Prometheus, если задан METRICS_PORT.
- Передаёт аргументы в sbo.handlers.cli.run и завершает процесс с его кодом.
"""

import logging
import sys

from sbo.config.settings import Settings
from sbo.handlers.cli import run
from sbo.metrics import start_metrics


def main() -> int:
    settings = Settings()

    # 1) Логирование
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.WARNING),
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        stream=sys.stderr,
    )
    logger = logging.getLogger("sbo")

    # 2) Sentry (если указан DSN)
    if settings.SENTRY_DSN:
        try:
            import sentry_sdk

            sentry_sdk.init(
                dsn=settings.SENTRY_DSN,
                environment=settings.SENTRY_ENV,
                traces_sample_rate=0.0,
            )
            logger.info("Sentry инициализирован")
        except Exception as e:
            logger.warning("Не удалось инициализировать Sentry: %s", e)

    # 3) Метрики Prometheus (только если задан порт)
    if settings.METRICS_PORT:
        try:
            start_metrics(settings.METRICS_PORT)
            logger.info("Метрики Prometheus доступны на http://localhost:%d/", settings.METRICS_PORT)
        except Exception as e:
            logger.warning("Не удалось запустить сервер метрик: %s", e)

    code, output = run(sys.argv[1:])
    if output:
        print(output)
    return code


if __name__ == "__main__":
    sys.exit(main())

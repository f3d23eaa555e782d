from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

# Принудительно загружаем .env в начале модуля настроек
load_dotenv(override=True)


class Settings(BaseSettings):
    # Данные классификационных таблиц
    SBO_TABLE_PATH: str | None = Field(default=None, description="Путь к JSON-файлу таблиц пар (перекрывает встроенный)")

    # Логирование и наблюдаемость
    LOG_LEVEL: str = Field(default="WARNING", description="Уровень логирования CLI (stderr)")
    METRICS_PORT: int | None = Field(default=None, description="Порт HTTP-сервера метрик Prometheus (если не задан, не поднимается)")
    SENTRY_DSN: str | None = Field(default=None, description="DSN для Sentry (опционально)")
    SENTRY_ENV: str = Field(default="dev", description="Окружение для Sentry")

    # Точные проверки
    VERIFY_MAX_DEGREE: int = Field(default=8, description="Макс. степень мономов в проверках сплетения по умолчанию")
    SWEEP_WORKERS: int = Field(default=0, ge=0, description="Число процессов для перебора параметров (0 = все ядра, 1 = в текущем процессе)")

    # Квадратура ядра
    KERNEL_POINTS: int = Field(default=6, description="Число узлов Гаусса–Лежандра на подотрезок")
    KERNEL_BASE_LEVEL: int = Field(default=2, description="Начальный уровень дробления (2^L подотрезков на кусок)")
    KERNEL_LEVELS: int = Field(default=4, description="Число последовательных уровней дробления")
    KERNEL_TOLERANCE: float = Field(default=1e-4, description="Допустимое относительное изменение между уровнями")
    KERNEL_SPLIT_RADIUS: float = Field(default=0.25, description="Радиус разбиения по ρ вокруг особой точки (y, 0)")

    # Загрузка из .env по умолчанию
    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", case_sensitive=False, extra='ignore', env_ignore_empty=True
    )

from dataclasses import dataclass


@dataclass(frozen=True)
class Texts:
    # Описание CLI
    CLI_DESCRIPTION: str = "Операторы нарушения симметрии: точные проверки, численное ядро и таблицы пар."
    GROUP_SL2: str = "Модели sl(2): операторы Ранкина–Коэна и разложение Клебша–Гордана"
    GROUP_CONF: str = "Конформная модель: операторы Юля, гегенбауэровы многочлены, интегральное ядро"
    GROUP_PAIRS: str = "Таблицы пар (g, g') с конечными и ограниченными кратностями"
    FORMAT_HELP: str = "Формат вывода: json (по умолчанию) или text (строки key: value)"

    # Подсказки параметров
    RATIONAL_HELP: str = "точное рациональное число, например 3 или -1/2"
    REAL_HELP: str = "число: p/q или десятичная запись"
    FORMAL_HELP: str = "если не задано, параметр остаётся формальным"
    MAX_DEGREE_HELP: str = "максимальная степень мономов (по умолчанию VERIFY_MAX_DEGREE)"

    # Ошибки
    USAGE_HINT: str = "запустите с --help, чтобы увидеть допустимые команды и флаги"
    INTERNAL_ERROR: str = "Внутренняя ошибка"
    INTERNAL_ERROR_HINT: str = "подробности записаны в журнал (stderr)"
    NO_COMPLEX_FORM: str = "no matching row in the complex-form table"

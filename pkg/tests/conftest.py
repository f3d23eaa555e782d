"""Общие настройки тестов: маркер slow и профиль hypothesis."""

import pytest
from hypothesis import settings as hypothesis_settings

from sbo.tables import pair_tables

hypothesis_settings.register_profile("default", max_examples=50, deadline=None)
hypothesis_settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="запускать долгие переборы")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: долгий перебор параметров (нужен --runslow)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="нужен --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _clear_table_cache():
    """Каждый тест читает таблицы заново (SBO_TABLE_PATH может меняться)."""
    pair_tables._load.cache_clear()
    yield
    pair_tables._load.cache_clear()

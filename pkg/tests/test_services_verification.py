"""
Тесты для отчёта о проверке тождеств.

Модуль: sbo/services/verification.py
"""

from unittest.mock import patch

from sbo.services.verification import VerificationReport


class TestVerificationReport:
    """Тесты накопления проверок"""

    def test_record(self):
        """Тест: нарушения накапливаются, счётчик растёт на каждую проверку"""
        report = VerificationReport(name="check_brackets_sl2(D=4)")
        report.record(True, "ok")
        report.record(False, "[e,f] ≠ h")
        assert report.checked == 2
        assert report.failures == ["[e,f] ≠ h"]
        assert not report.passed

    def test_empty_report_passes(self):
        """Тест: отчёт без нарушений считается пройденным"""
        assert VerificationReport(name="x").passed

    def test_kind(self):
        """Тест: вид проверки берётся из имени до скобки"""
        assert VerificationReport(name="verify_intertwining(a=2)").kind == "verify_intertwining"
        assert VerificationReport(name="closure").kind == "closure"

    def test_merge(self):
        """Тест: объединение отчётов"""
        first = VerificationReport(name="a", checked=3, notes=["λ = 0"])
        second = VerificationReport(name="b", checked=2, failures=["x"])
        merged = first.merge(second)
        assert merged is first
        assert merged.checked == 5
        assert merged.failures == ["x"]
        assert merged.notes == ["λ = 0"]

    def test_to_dict(self):
        """Тест: словарь для JSON-вывода"""
        report = VerificationReport(name="a", checked=1, failures=["bad"])
        assert report.to_dict() == {
            "name": "a",
            "passed": False,
            "checked": 1,
            "failures": ["bad"],
            "notes": [],
        }

    def test_log_summary_passed(self):
        """Тест: успешная проверка пишет info и метрики"""
        report = VerificationReport(name="closure(n=2)", checked=4)
        with patch("sbo.services.verification.logger") as mock_logger, patch(
            "sbo.services.verification.record_identity_checks"
        ) as mock_record:
            report.log_summary()
        mock_record.assert_called_once_with("closure", 4, 0)
        mock_logger.info.assert_called_once()
        mock_logger.warning.assert_not_called()

    def test_log_summary_failed(self):
        """Тест: нарушение пишет warning с первой ошибкой"""
        report = VerificationReport(name="closure(n=2)", checked=4, failures=["[T1,C1]"])
        with patch("sbo.services.verification.logger") as mock_logger, patch(
            "sbo.services.verification.record_identity_checks"
        ) as mock_record:
            report.log_summary()
        mock_record.assert_called_once_with("closure", 3, 1)
        mock_logger.warning.assert_called_once()
        assert "[T1,C1]" in mock_logger.warning.call_args[0]

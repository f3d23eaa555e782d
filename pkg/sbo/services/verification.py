"""Отчёт о точной проверке операторных тождеств."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List

from sbo.metrics import record_identity_checks

logger = logging.getLogger(__name__)


@dataclass
class VerificationReport:
    """Результат проверки: число проверенных тождеств и список нарушений.

    Проверки не бросают исключений при математическом расхождении: нарушения
    накапливаются в failures, а вызывающая сторона решает, что с ними делать.
    """

    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def kind(self) -> str:
        return self.name.split("(")[0]

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, description: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(description)

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.notes.extend(other.notes)
        return self

    def log_summary(self) -> None:
        record_identity_checks(self.kind, self.checked - len(self.failures), len(self.failures))
        if self.passed:
            logger.info("Проверка %s: %d тождеств выполнено", self.name, self.checked)
        else:
            logger.warning(
                "Проверка %s: нарушено %d из %d (первое: %s)",
                self.name,
                len(self.failures),
                self.checked,
                self.failures[0],
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
            "notes": list(self.notes),
        }

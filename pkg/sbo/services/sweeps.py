"""
Переборы параметров для пакетной проверки тождеств.

Каждая точка считается независимо функцией уровня модуля (чтобы её можно было
передать в ProcessPoolExecutor); результаты всегда возвращаются в порядке входа.
"""

from __future__ import annotations

import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sbo.config.settings import Settings
from sbo.core.polys import L1, L2, LAM
from sbo.models.conformal import check_brackets_conf, check_restriction_anchor, check_subalgebra_closure
from sbo.operators.gegenbauer import gegenbauer, gegenbauer_renorm, vanishing_alphas
from sbo.operators.juhl import verify_juhl_equivariance
from sbo.operators.rankin_cohen import (
    OmegaClass,
    basis_rank,
    cg_decompose,
    cg_joint_rank,
    derivative_basis,
    omega_classify,
    rc_operator,
    singular_basis,
    verify_intertwining,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepPoint:
    label: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SweepSummary:
    name: str
    points: List[SweepPoint]
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)

    @property
    def failures(self) -> List[SweepPoint]:
        return [p for p in self.points if not p.passed]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "points": len(self.points),
            "failures": [{"label": p.label, **p.details} for p in self.failures],
            "seconds": round(self.seconds, 3),
        }


def run_sweep(
    name: str,
    func: Callable[[Any], SweepPoint],
    params: Iterable[Any],
    workers: Optional[int] = None,
) -> SweepSummary:
    """Вычисляет func на всех точках; workers > 1 включает пул процессов, 0 означает все ядра."""

    workers = Settings().SWEEP_WORKERS if workers is None else workers
    if workers == 0:
        workers = os.cpu_count() or 1
    params = list(params)
    start = time.perf_counter()
    if workers <= 1:
        points = [func(p) for p in params]
    else:
        chunk = max(1, len(params) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(func, params, chunksize=chunk))
    summary = SweepSummary(name=name, points=points, seconds=time.perf_counter() - start)
    if summary.passed:
        logger.info("Перебор %s: %d точек без нарушений (%.1f с)", name, len(points), summary.seconds)
    else:
        logger.warning("Перебор %s: %d нарушений из %d", name, len(summary.failures), len(points))
    return summary


# --- точки перебора ---


def vanishing_point(point: Tuple[int, int, int]) -> SweepPoint:
    """RC ≡ 0 ⇔ точка лежит в Ω_sing."""

    l1, l2, a = point
    lam1, lam2 = Fraction(l1), Fraction(l2)
    zero = rc_operator(lam1, lam2, a).is_zero
    singular = omega_classify(lam1, lam2, lam1 + lam2 + 2 * a) is OmegaClass.OMEGA_SINGULAR
    return SweepPoint(f"l1={l1} l2={l2} a={a}", zero == singular, {"zero": zero, "singular": singular})


def check_degree(a: int, max_degree: Optional[int] = None) -> int:
    """Степень пробных мономов для оператора порядка a: не ниже a + 2, иначе все мономы уходят в ноль."""

    base = Settings().VERIFY_MAX_DEGREE if max_degree is None else max_degree
    return max(base, a + 2)


def singular_point(point: Tuple[int, int, int, int]) -> SweepPoint:
    """Оба базиса в Ω_sing имеют ранг 2, их линейные оболочки совпадают и все операторы сплетают."""

    l1, l2, a, max_degree = point
    lam1, lam2 = Fraction(l1), Fraction(l2)
    lam3 = lam1 + lam2 + 2 * a
    sing = singular_basis(lam1, lam2, lam3)
    deriv = derivative_basis(lam1, lam2, lam3)
    ranks = (basis_rank(sing), basis_rank(deriv), basis_rank(sing + deriv))
    intertwine = all(verify_intertwining(op, lam1, lam2, lam3, max_degree).passed for op in sing + deriv)
    return SweepPoint(
        f"l1={l1} l2={l2} a={a}",
        ranks == (2, 2, 2) and intertwine,
        {"ranks": list(ranks), "intertwining": intertwine},
    )


def intertwining_point(point: Tuple[Optional[Fraction], Optional[Fraction], int, int]) -> SweepPoint:
    """Сплетение RC при формальных (None) или конкретных λ1, λ2."""

    l1, l2, a, max_degree = point
    lam1 = L1 if l1 is None else l1
    lam2 = L2 if l2 is None else l2
    report = verify_intertwining(rc_operator(lam1, lam2, a), lam1, lam2, lam1 + lam2 + 2 * a, max_degree)
    label = f"l1={l1 if l1 is not None else 'formal'} l2={l2 if l2 is not None else 'formal'} a={a}"
    return SweepPoint(label, report.passed, {"checked": report.checked})


def cg_point(point: Tuple[int, int]) -> SweepPoint:
    m, n = point
    components = cg_decompose(m, n)
    nonzero = all(not c.projector.is_zero for c in components)
    images = all(c.image_rank == c.target_dim for c in components)
    total = sum(c.target_dim for c in components)
    joint = cg_joint_rank(m, n)
    source = (m + 1) * (n + 1)
    return SweepPoint(
        f"m={m} n={n}",
        nonzero and images and total == source and joint == source,
        {"total_dim": total, "joint_rank": joint},
    )


def brackets_point(point: Tuple[int, int]) -> SweepPoint:
    n, max_degree = point
    reports = [
        check_brackets_conf(n, LAM, max_degree),
        check_subalgebra_closure(n),
        check_restriction_anchor(n, LAM, max_degree),
    ]
    return SweepPoint(f"n={n}", all(r.passed for r in reports), {"checked": sum(r.checked for r in reports)})


def juhl_point(point: Tuple[int, Fraction, int, int]) -> SweepPoint:
    n, lam, gap, max_degree = point
    report = verify_juhl_equivariance(n, lam, lam + gap, max_degree)
    return SweepPoint(f"n={n} λ={lam} ν−λ={gap}", report.passed, {"checked": report.checked})


def gegenbauer_point(point: Tuple[int, Fraction]) -> SweepPoint:
    l, alpha = point
    zero = gegenbauer(l, alpha).is_zero
    expected = alpha.denominator == 1 and int(alpha) in vanishing_alphas(l)
    renorm_zero = gegenbauer_renorm(l, alpha).is_zero
    return SweepPoint(
        f"l={l} α={alpha}",
        zero == expected and not renorm_zero,
        {"zero": zero, "expected_zero": expected, "renorm_zero": renorm_zero},
    )


# --- сетки параметров ---


def vanishing_grid(bound: int = 6, a_max: int = 6) -> List[Tuple[int, int, int]]:
    return [
        (l1, l2, a)
        for l1 in range(-bound, bound + 1)
        for l2 in range(-bound, bound + 1)
        for a in range(a_max + 1)
    ]


def singular_grid(
    bound: int = 6, a_max: int = 6, max_degree: Optional[int] = None
) -> List[Tuple[int, int, int, int]]:
    points = []
    for l1, l2, a in vanishing_grid(bound, a_max):
        lam1, lam2 = Fraction(l1), Fraction(l2)
        if omega_classify(lam1, lam2, lam1 + lam2 + 2 * a) is OmegaClass.OMEGA_SINGULAR:
            points.append((l1, l2, a, check_degree(a, max_degree)))
    return points


def intertwining_grid(
    a_max: int = 6, max_degree: Optional[int] = None, samples: Sequence[Tuple[Fraction, Fraction]] = ()
) -> List[Tuple[Optional[Fraction], Optional[Fraction], int, int]]:
    points: List[Tuple[Optional[Fraction], Optional[Fraction], int, int]] = [
        (None, None, a, check_degree(a, max_degree)) for a in range(a_max + 1)
    ]
    for index, (l1, l2) in enumerate(samples):
        a = index % (a_max + 1)
        points.append((l1, l2, a, check_degree(a, max_degree)))
    return points


def rational_samples(count: int = 50) -> List[Tuple[Fraction, Fraction]]:
    """Детерминированный набор рациональных точек (λ1, λ2)."""

    return [(Fraction(3 * k - 70, 7), Fraction(50 - 5 * k, 11)) for k in range(count)]


def cg_grid(bound: int = 6) -> List[Tuple[int, int]]:
    return [(m, n) for m in range(bound + 1) for n in range(bound + 1)]


def juhl_grid(max_degree: Optional[int] = None) -> List[Tuple[int, Fraction, int, int]]:
    lambdas = [Fraction(v) for v in ("-3", "-2", "-1", "-1/2", "0", "1/2", "1", "2")]
    return [
        (n, lam, gap, check_degree(gap, max_degree)) for n in (2, 3, 4) for gap in (0, 2, 4, 6) for lam in lambdas
    ]


def gegenbauer_grid(l_max: int = 10, bound: int = 8) -> List[Tuple[int, Fraction]]:
    alphas = [Fraction(k, 2) for k in range(-2 * bound, 2 * bound + 1)]
    return [(l, alpha) for l in range(l_max + 1) for alpha in alphas]


def acceptance_sweeps(workers: Optional[int] = None, max_degree: Optional[int] = None) -> List[SweepSummary]:
    """Все точные переборы по порядку; max_degree по умолчанию берётся из VERIFY_MAX_DEGREE."""

    degree = Settings().VERIFY_MAX_DEGREE if max_degree is None else max_degree
    return [
        run_sweep("vanishing_locus", vanishing_point, vanishing_grid(), workers),
        run_sweep(
            "intertwining",
            intertwining_point,
            intertwining_grid(max_degree=degree, samples=rational_samples()),
            workers,
        ),
        run_sweep("singular_bases", singular_point, singular_grid(max_degree=degree), workers),
        run_sweep("clebsch_gordan", cg_point, cg_grid(), workers),
        run_sweep("conformal_brackets", brackets_point, [(n, degree) for n in (2, 3, 4)], workers),
        run_sweep("juhl_equivariance", juhl_point, juhl_grid(degree), workers),
        run_sweep("gegenbauer", gegenbauer_point, gegenbauer_grid(), workers),
    ]

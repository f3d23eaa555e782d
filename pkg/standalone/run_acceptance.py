#!/usr/bin/env python3
"""
Пакетный прогон приёмочных проверок.

Скрипт проверяет:
1. Множество нулей операторов Ранкина–Коэна и Ω_sing
2. Сплетение (формальные λ1, λ2 и рациональные точки)
3. Сингулярные базисы и базис производных
4. Разложение Клебша–Гордана
5. Коммутационные соотношения конформной модели
6. Эквивариантность операторов Юля
7. Нули многочленов Гегенбауэра
8. Численное ядро (сходимость квадратуры и эквивариантность)
9. Таблицы пар

Использование:
    python standalone/run_acceptance.py [--workers 4] [--max-degree N] [--skip-kernel] [--json]
"""

import argparse
import json
import logging
import sys
from pathlib import Path

# Добавляем корень проекта в PYTHONPATH
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from sbo.config.kernel_config import KernelConfig
from sbo.kernel.bumps import BumpFunction
from sbo.kernel.equivariance import numeric_equivariance
from sbo.kernel.quadrature import kernel_eval
from sbo.models.conformal import subalgebra_basis
from sbo.services.sweeps import acceptance_sweeps
from sbo.tables.pair_tables import TableFilter, bb_query, complex_form_lookup, list_families, pp_query


def check_kernel() -> dict:
    cfg = KernelConfig(n=2, lam=4.0, nu=0.5)
    f = BumpFunction(cfg.bump_spec())
    result = kernel_eval(cfg, f)
    ratios = result.convergence_ratios()
    relative = result.error_estimate / max(abs(result.value), 1e-12)
    residuals = {X.tag: numeric_equivariance(cfg, X, f).residual for X in subalgebra_basis(cfg.n)}
    passed = all(r < 0.5 for r in ratios) and relative < 1e-4 and all(r < 1e-3 for r in residuals.values())
    return {
        "name": "kernel",
        "passed": passed,
        "value": result.value,
        "ratios": ratios,
        "relative_change": relative,
        "residuals": residuals,
    }


def check_tables() -> dict:
    bb = [r.tag for r in list_families(TableFilter.bb)]
    pp = [r.tag for r in list_families(TableFilter.pp)]
    checks = {
        "bb_list": bb == ["A", "B", "F1", "F2", "F3", "F4", "F5"],
        "pp_list": len(pp) == 20 and set(bb) <= set(pp),
        "pp_F3": pp_query("(sl(n+1,R), gl(n,R))", {"n": 3}).matched == "F3",
        "pp_G2": pp_query("(o(n,1)+o(n,1), diag o(n,1))", {"n": 4}).matched == "G2",
        "pp_none": pp_query("(sl(3,R), so(1,2))").matched is None,
        "bb_F4": bb_query("(su(p+1,q), u(p,q))"),
        "bb_G2": not bb_query("(o(n,1)+o(n,1), diag)"),
        "bb_H1": not bb_query("(o(2n,2), u(n,1))"),
        "complex_sl4": getattr(complex_form_lookup("sl(4,C)"), "real_form", None) == "su*(4)",
        "complex_so7": getattr(complex_form_lookup("so(7,C)"), "real_form", None) == "o(6,1)",
        "complex_sl3": complex_form_lookup("sl(3,C)") is None,
    }
    return {"name": "tables", "passed": all(checks.values()), "checks": checks}


def main() -> int:
    parser = argparse.ArgumentParser(description="Приёмочные проверки sbo")
    parser.add_argument("--workers", type=int, default=None, help="число процессов (по умолчанию SWEEP_WORKERS)")
    parser.add_argument("--max-degree", type=int, default=None, help="степень мономов (по умолчанию VERIFY_MAX_DEGREE)")
    parser.add_argument("--skip-kernel", action="store_true")
    parser.add_argument("--json", action="store_true", help="вывести итог одним JSON-объектом")
    args = parser.parse_args()

    logging.basicConfig(level=logging.INFO, format="%(asctime)s | %(levelname)s | %(name)s | %(message)s")

    results = [s.to_dict() for s in acceptance_sweeps(args.workers, args.max_degree)]
    if not args.skip_kernel:
        results.append(check_kernel())
    results.append(check_tables())

    if args.json:
        print(json.dumps(results, sort_keys=True, ensure_ascii=False))
    else:
        for item in results:
            mark = "✅" if item["passed"] else "❌"
            print(f"{mark} {item['name']}")
    return 0 if all(item["passed"] for item in results) else 1


if __name__ == "__main__":
    sys.exit(main())

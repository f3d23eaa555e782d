"""
Команды группы sl2: размерности H(λ1, λ2, λ3), операторы Ранкина–Коэна,
проверка сплетения и разложение Клебша–Гордана.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from typing import Any, Dict, List

from sbo.config.settings import Settings
from sbo.core.polys import L1, L2, ParamLike, coeff_to_str, param
from sbo.core.rational import format_rational, parse_rational
from sbo.handlers.router import CommandRouter, arg
from sbo.operators.rankin_cohen import (
    BiDiffOp,
    basis_rank,
    cg_decompose,
    cg_joint_rank,
    derivative_basis,
    omega_classify,
    rc_operator,
    sbo_dim_sl2,
    singular_basis,
    verify_intertwining,
)
from sbo.services.validation_service import PreconditionError, require_natural
from sbo.texts import Texts

router = CommandRouter("sl2", help=Texts.GROUP_SL2)

BASES = ("generic", "singular", "derivative")


def _weights(args: argparse.Namespace) -> tuple[ParamLike, ParamLike]:
    lam1 = L1 if args.l1 is None else args.l1
    lam2 = L2 if args.l2 is None else args.l2
    return lam1, lam2


def _operators(lam1: ParamLike, lam2: ParamLike, a: int, basis: str) -> List[BiDiffOp]:
    if basis == "generic":
        return [rc_operator(lam1, lam2, a)]
    if not isinstance(lam1, Fraction) or not isinstance(lam2, Fraction):
        raise PreconditionError(
            f"Базис {basis} требует конкретных λ1, λ2",
            "FORMAL_NOT_ALLOWED",
            hint="задайте --l1 и --l2",
        )
    lam3 = lam1 + lam2 + 2 * a
    build = singular_basis if basis == "singular" else derivative_basis
    return list(build(lam1, lam2, lam3))


@router.command(
    "dim",
    arg("--l1", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--l2", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--l3", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    help="dim H(λ1, λ2, λ3) и класс точки",
)
def cmd_dim(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "dim": sbo_dim_sl2(args.l1, args.l2, args.l3),
        "class": omega_classify(args.l1, args.l2, args.l3).value,
    }


@router.command(
    "rc",
    arg("--l1", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--l2", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--a", type=int, required=True, help="порядок a ≥ 0"),
    arg("--basis", choices=BASES, default="generic"),
    help="Коэффициенты оператора Ранкина–Коэна (или базиса в Ω_sing)",
)
def cmd_rc(args: argparse.Namespace) -> Dict[str, Any]:
    a = require_natural(args.a, "a")
    lam1, lam2 = _weights(args)
    operators = _operators(lam1, lam2, a, args.basis)
    result: Dict[str, Any] = {
        "basis": args.basis,
        "l1": coeff_to_str(param(lam1)),
        "l2": coeff_to_str(param(lam2)),
        "l3": coeff_to_str(param(lam1) + param(lam2) + 2 * a),
        "operators": [op.to_json() for op in operators],
    }
    if isinstance(lam1, Fraction) and isinstance(lam2, Fraction):
        result["class"] = omega_classify(lam1, lam2, lam1 + lam2 + 2 * a).value
        result["rank"] = basis_rank(operators)
    return result


@router.command(
    "verify",
    arg("--l1", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--l2", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--a", type=int, required=True),
    arg("--basis", choices=BASES, default="generic"),
    arg("--max-degree", dest="max_degree", type=int, default=None, help=Texts.MAX_DEGREE_HELP),
    help="Точная проверка сплетения на мономах z1^i z2^j",
)
def cmd_verify(args: argparse.Namespace) -> Dict[str, Any]:
    a = require_natural(args.a, "a")
    max_degree = require_natural(
        Settings().VERIFY_MAX_DEGREE if args.max_degree is None else args.max_degree, "max-degree"
    )
    lam1, lam2 = _weights(args)
    lam3 = param(lam1) + param(lam2) + 2 * a
    reports = [verify_intertwining(op, lam1, lam2, lam3, max_degree) for op in _operators(lam1, lam2, a, args.basis)]
    return {
        "passed": all(r.passed for r in reports),
        "max_degree": max_degree,
        "reports": [r.to_dict() for r in reports],
    }


@router.command(
    "cg",
    arg("--m", type=int, required=True),
    arg("--n", type=int, required=True),
    help="Разложение Клебша–Гордана Pol_m ⊗ Pol_n",
)
def cmd_cg(args: argparse.Namespace) -> Dict[str, Any]:
    m, n = require_natural(args.m, "m"), require_natural(args.n, "n")
    components = cg_decompose(m, n)
    return {
        "m": m,
        "n": n,
        "components": [
            {
                "a": c.a,
                "target_dim": c.target_dim,
                "image_rank": c.image_rank,
                "projector": c.projector.to_json(),
            }
            for c in components
        ],
        "total_dim": sum(c.target_dim for c in components),
        "source_dim": (m + 1) * (n + 1),
        "joint_rank": cg_joint_rank(m, n),
        "weights": [format_rational(-m), format_rational(-n)],
    }

"""
Команды группы conf: пара O(n+1,1) ↓ O(n,1) в плоской модели.
"""

from __future__ import annotations

import argparse
from typing import Any, Dict

from sbo.config.kernel_config import load_kernel_config
from sbo.config.settings import Settings
from sbo.core.polys import ALPHA, LAM, coeff_to_str, to_json
from sbo.core.rational import parse_rational, parse_real
from sbo.handlers.router import CommandRouter, arg
from sbo.kernel.bumps import BumpFunction
from sbo.kernel.equivariance import numeric_equivariance
from sbo.kernel.normalization import kernel_eval_normalized
from sbo.kernel.quadrature import kernel_eval
from sbo.models.conformal import (
    check_brackets_conf,
    check_restriction_anchor,
    check_subalgebra_closure,
    subalgebra_basis,
)
from sbo.operators.gegenbauer import gegenbauer, gegenbauer_renorm, renormalization_factor, vanishing_alphas
from sbo.operators.juhl import (
    aq_hom_dim,
    diff_locus,
    is_l_even,
    juhl_operator,
    sbo_dim_conf,
    verify_juhl_equivariance,
)
from sbo.services.validation_service import require_natural
from sbo.texts import Texts

router = CommandRouter("conf", help=Texts.GROUP_CONF)


def _max_degree(value: int | None) -> int:
    return require_natural(Settings().VERIFY_MAX_DEGREE if value is None else value, "max-degree")


@router.command(
    "dim",
    arg("--lambda", dest="lam", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--nu", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    help="dim H(λ, ν) и принадлежность L_even",
)
def cmd_dim(args: argparse.Namespace) -> Dict[str, Any]:
    return {"dim": sbo_dim_conf(args.lam, args.nu), "l_even": is_l_even(args.lam, args.nu)}


@router.command(
    "locus",
    arg("--lambda", dest="lam", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--nu", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    help="Лежит ли (λ, ν) на множестве дифференциальных операторов (ν − λ ∈ 2N)",
)
def cmd_locus(args: argparse.Namespace) -> Dict[str, Any]:
    return {"differential": diff_locus(args.lam, args.nu)}


@router.command(
    "aq",
    arg("--i", type=int, required=True),
    arg("--j", type=int, required=True),
    help="dim Hom между модулями A_q(λ) с индексами i, j",
)
def cmd_aq(args: argparse.Namespace) -> Dict[str, Any]:
    i, j = require_natural(args.i, "i"), require_natural(args.j, "j")
    return {"i": i, "j": j, "dim": aq_hom_dim(i, j)}


@router.command(
    "juhl",
    arg("--n", type=int, required=True),
    arg("--lambda", dest="lam", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--nu", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    help="Символ оператора Юля C̃_{λ,ν}",
)
def cmd_juhl(args: argparse.Namespace) -> Dict[str, Any]:
    return juhl_operator(args.n, args.lam, args.nu).to_json()


@router.command(
    "verify",
    arg("--n", type=int, required=True),
    arg("--lambda", dest="lam", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--nu", type=parse_rational, required=True, help=Texts.RATIONAL_HELP),
    arg("--max-degree", dest="max_degree", type=int, default=None, help=Texts.MAX_DEGREE_HELP),
    help="Точная проверка эквивариантности оператора Юля",
)
def cmd_verify(args: argparse.Namespace) -> Dict[str, Any]:
    report = verify_juhl_equivariance(args.n, args.lam, args.nu, _max_degree(args.max_degree))
    return report.to_dict()


@router.command(
    "brackets",
    arg("--n", type=int, required=True),
    arg("--lambda", dest="lam", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--max-degree", dest="max_degree", type=int, default=None, help=Texts.MAX_DEGREE_HELP),
    help="Коммутационные соотношения o(n+1,1), замкнутость o(n,1) и тождество ограничения при l = 0",
)
def cmd_brackets(args: argparse.Namespace) -> Dict[str, Any]:
    lam = LAM if args.lam is None else args.lam
    max_degree = _max_degree(args.max_degree)
    reports = [
        check_brackets_conf(args.n, lam, max_degree),
        check_subalgebra_closure(args.n),
        check_restriction_anchor(args.n, lam, max_degree),
    ]
    return {"passed": all(r.passed for r in reports), "reports": [r.to_dict() for r in reports]}


@router.command(
    "gegenbauer",
    arg("--l", type=int, required=True),
    arg("--alpha", type=parse_rational, default=None, help=f"{Texts.RATIONAL_HELP}; {Texts.FORMAL_HELP}"),
    arg("--renorm", action="store_true", help="перенормированный C̃_l^α"),
    arg("--inflate", action="store_true", help="двухпеременная форма C̃_l^α(u, v)"),
    help="Многочлен Гегенбауэра C_l^α (коэффициенты при степенях t)",
)
def cmd_gegenbauer(args: argparse.Namespace) -> Dict[str, Any]:
    l = require_natural(args.l, "l")
    alpha = ALPHA if args.alpha is None else args.alpha
    poly = gegenbauer_renorm(l, alpha) if args.renorm or args.inflate else gegenbauer(l, alpha)
    result: Dict[str, Any] = {
        "l": l,
        "alpha": coeff_to_str(alpha),
        "renormalized": poly.renormalized,
        "coeffs": {str(power): coeff_to_str(c) for power, c in sorted(poly.as_dict().items())},
        "is_zero": poly.is_zero,
        "vanishing_alphas": list(vanishing_alphas(l)),
        "renormalization_factor": coeff_to_str(renormalization_factor(l, alpha)),
    }
    if args.inflate:
        result["inflated"] = to_json(poly.inflate())
    return result


@router.command(
    "kernel",
    arg("--n", type=int, default=None),
    arg("--lambda", dest="lam", type=parse_real, default=None, help=Texts.REAL_HELP),
    arg("--nu", type=parse_real, default=None, help=Texts.REAL_HELP),
    arg("--config", default=None, help="JSON-файл KernelConfig"),
    arg("--y", type=parse_real, nargs="+", default=None, help="точка y ∈ R^{n−1}"),
    arg("--normalize", choices=("none", "tilde", "renorm"), default="none"),
    arg("--equivariance", action="store_true", help="численная проверка эквивариантности по o(n,1)"),
    help="Численное значение интегрального оператора на гладкой функции с компактным носителем",
)
def cmd_kernel(args: argparse.Namespace) -> Dict[str, Any]:
    cfg = load_kernel_config(args.config, {"n": args.n, "lam": args.lam, "nu": args.nu, "y": args.y})
    f = BumpFunction(cfg.bump_spec())
    if args.normalize == "none":
        result = kernel_eval(cfg, f)
    else:
        result = kernel_eval_normalized(cfg, f, variant=args.normalize)
    output: Dict[str, Any] = {
        "n": cfg.n,
        "lambda": cfg.lam,
        "nu": cfg.nu,
        "y": cfg.y_point(),
        "normalize": args.normalize,
        **result.to_dict(),
        "estimates": list(result.estimates),
        "convergence_ratios": result.convergence_ratios(),
    }
    if args.equivariance:
        output["equivariance"] = [numeric_equivariance(cfg, X, f).to_dict() for X in subalgebra_basis(cfg.n)]
    return output

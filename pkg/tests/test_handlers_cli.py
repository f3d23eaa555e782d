"""
Тесты для командной строки: коды выхода, JSON-вывод и детерминированность.

Модули: sbo/handlers/cli.py, sbo/handlers/sl2.py, sbo/handlers/conf.py, sbo/handlers/pairs.py
"""

import json
from fractions import Fraction
from unittest.mock import patch

import pytest

from sbo.handlers.cli import render, run
from sbo.models.sl2 import z_ring
from sbo.operators.rankin_cohen import BiDiffOp, rc_apply, rc_operator


def run_json(*argv):
    code, output = run(list(argv))
    return code, json.loads(output)


class TestSl2Commands:
    """Тесты группы sl2"""

    @pytest.mark.parametrize(
        "argv, expected",
        [
            (["--l1", "0", "--l2", "0", "--l3", "2"], {"dim": 2, "class": "omega_singular"}),
            (["--l1", "2", "--l2", "2", "--l3", "5"], {"dim": 0, "class": "not_in_omega"}),
            (["--l1", "1", "--l2", "1", "--l3", "2"], {"dim": 1, "class": "omega_generic"}),
        ],
    )
    def test_dim(self, argv, expected):
        """Тест: sl2 dim возвращает размерность и класс точки"""
        code, data = run_json("sl2", "dim", *argv)
        assert code == 0
        assert data == expected

    def test_dim_negative_fraction(self):
        """Тест: отрицательная дробь передаётся через '='"""
        code, data = run_json("sl2", "dim", "--l1=-1/2", "--l2=1/2", "--l3", "2")
        assert code == 0
        assert data["class"] == "omega_generic"

    def test_rc_formal(self):
        """Тест: без --l1/--l2 коэффициенты остаются формальными"""
        code, data = run_json("sl2", "rc", "--a", "1")
        assert code == 0
        assert data["basis"] == "generic"
        assert data["operators"] == [{"a": 1, "coeffs": ["l2", "-l1"]}]
        assert "rank" not in data

    def test_rc_round_trip(self):
        """Сценарий: оператор из JSON применяется так же, как построенный напрямую"""
        code, data = run_json("sl2", "rc", "--l1", "1/2", "--l2", "3", "--a", "3")
        assert code == 0
        parsed = BiDiffOp.from_json(data["operators"][0])
        direct = rc_operator(Fraction(1, 2), Fraction(3), 3)
        assert parsed.to_json() == direct.to_json()

        space = z_ring()
        (z,) = space.gens
        for f1, f2 in [(z**3, z**4), (z**5 + z, z**3 - 2), (space.one, z**6)]:
            assert rc_apply(parsed, f1, f2) == rc_apply(direct, f1, f2)

    def test_rc_singular_basis(self):
        """Тест: в Ω_sing базис из двух операторов ранга 2"""
        code, data = run_json("sl2", "rc", "--l1", "0", "--l2", "0", "--a", "1", "--basis", "singular")
        assert code == 0
        assert data["class"] == "omega_singular"
        assert data["rank"] == 2
        assert len(data["operators"]) == 2

    def test_rc_generic_vanishes_on_singular(self):
        """Тест: RC в точке Ω_sing нулевой, ранг 0"""
        code, data = run_json("sl2", "rc", "--l1", "0", "--l2", "0", "--a", "1")
        assert code == 0
        assert data["operators"][0]["coeffs"] == ["0", "0"]
        assert data["rank"] == 0

    def test_rc_formal_basis_rejected(self):
        """Тест: особый базис требует конкретных весов"""
        code, data = run_json("sl2", "rc", "--a", "1", "--basis", "derivative")
        assert code == 2
        assert data["error_code"] == "FORMAL_NOT_ALLOWED"

    def test_rc_not_singular(self):
        """Тест: особый базис вне Ω_sing отклоняется"""
        code, data = run_json("sl2", "rc", "--l1", "1", "--l2", "1", "--a", "1", "--basis", "singular")
        assert code == 2
        assert data["error_code"] == "NOT_SINGULAR"

    def test_verify(self):
        """Тест: проверка сплетения проходит для формальных весов"""
        code, data = run_json("sl2", "verify", "--a", "2", "--max-degree", "4")
        assert code == 0
        assert data["passed"] is True
        assert data["max_degree"] == 4
        assert data["reports"][0]["failures"] == []

    def test_cg(self):
        """Тест: Pol_1 ⊗ Pol_1 = Pol_2 ⊕ Pol_0"""
        code, data = run_json("sl2", "cg", "--m", "1", "--n", "1")
        assert code == 0
        assert [c["target_dim"] for c in data["components"]] == [3, 1]
        assert data["total_dim"] == data["source_dim"] == 4
        assert data["joint_rank"] == 4
        assert data["weights"] == ["-1", "-1"]


class TestConfCommands:
    """Тесты группы conf"""

    @pytest.mark.parametrize(
        "lam, nu, expected",
        [
            ("1", "1", {"dim": 1, "l_even": False}),
            ("-2", "0", {"dim": 2, "l_even": True}),
            ("1/2", "3", {"dim": 1, "l_even": False}),
        ],
    )
    def test_dim(self, lam, nu, expected):
        """Тест: conf dim"""
        code, data = run_json("conf", "dim", f"--lambda={lam}", f"--nu={nu}")
        assert code == 0
        assert data == expected

    def test_locus(self):
        """Тест: ν − λ ∈ 2N"""
        assert run_json("conf", "locus", "--lambda", "1", "--nu", "5")[1] == {"differential": True}
        assert run_json("conf", "locus", "--lambda", "1", "--nu", "4")[1] == {"differential": False}

    @pytest.mark.parametrize("i, j, expected", [(3, 1, 1), (1, 2, 0), (3, 2, "unspecified")])
    def test_aq(self, i, j, expected):
        """Тест: известные случаи и unspecified"""
        code, data = run_json("conf", "aq", "--i", str(i), "--j", str(j))
        assert code == 0
        assert data["dim"] == expected

    def test_juhl(self):
        """Тест: символ оператора при n = 3, λ = 1, ν = 3"""
        code, data = run_json("conf", "juhl", "--n", "3", "--lambda", "1", "--nu", "3")
        assert code == 0
        assert data["order"] == 2
        assert data["restrict"] == "x_n=0"
        terms = {tuple(t["orders"]): t["coeff"] for t in data["terms"]}
        assert terms == {(0, 0, 2): "2", (0, 2, 0): "1", (2, 0, 0): "1"}

    def test_juhl_off_locus(self):
        """Тест: ν − λ вне 2N"""
        code, data = run_json("conf", "juhl", "--n", "3", "--lambda", "1", "--nu", "2")
        assert code == 2
        assert data["error_code"] == "DIFF_LOCUS"

    def test_verify(self):
        """Тест: эквивариантность оператора Юля на малой степени"""
        code, data = run_json("conf", "verify", "--n", "2", "--lambda", "1/2", "--nu", "5/2", "--max-degree", "3")
        assert code == 0
        assert data["passed"] is True

    def test_brackets(self):
        """Тест: соотношения o(3,1) и тождество ограничения"""
        code, data = run_json("conf", "brackets", "--n", "2", "--max-degree", "2")
        assert code == 0
        assert data["passed"] is True
        assert len(data["reports"]) == 3

    def test_gegenbauer(self):
        """Тест: C_2^0 ≡ 0, а перенормированный многочлен нет"""
        code, data = run_json("conf", "gegenbauer", "--l", "2", "--alpha", "0")
        assert code == 0
        assert data["is_zero"] is True
        assert data["vanishing_alphas"] == [0]

        code, data = run_json("conf", "gegenbauer", "--l", "2", "--alpha", "0", "--renorm")
        assert code == 0
        assert data["renormalized"] is True
        assert data["is_zero"] is False

    def test_kernel(self, tmp_path):
        """Сценарий: численный оператор с конфигурацией из файла"""
        config = tmp_path / "kernel.json"
        config.write_text(
            json.dumps({"n": 2, "lam": 4, "nu": 0.5, "levels": 2, "base_level": 1, "tolerance": 10.0}),
            encoding="utf-8",
        )
        code, data = run_json("conf", "kernel", "--config", str(config))
        assert code == 0
        assert data["n"] == 2
        assert data["y"] == [0.0]
        assert len(data["estimates"]) == 2
        assert data["value"] == data["estimates"][-1]

    def test_kernel_decimal_override(self, tmp_path):
        """Тест: десятичные λ, ν из командной строки перекрывают файл"""
        config = tmp_path / "kernel.json"
        config.write_text(json.dumps({"n": 2, "lam": 4, "nu": 0.5}), encoding="utf-8")
        code, data = run_json("conf", "kernel", "--config", str(config), "--lambda", "0.5", "--nu", "1.5")
        assert code == 2
        assert data["error_code"] == "CONVERGENCE_DOMAIN"

    def test_kernel_missing_config(self, tmp_path):
        """Тест: конфигурационный файл не найден"""
        code, data = run_json("conf", "kernel", "--config", str(tmp_path / "absent.json"))
        assert code == 2
        assert data["error_code"] == "CONFIG_NOT_FOUND"


class TestPairsCommands:
    """Тесты группы pairs"""

    def test_query_with_binding(self):
        """Тест: (sl(n+1,R), gl(n,R)) при n = 3"""
        code, data = run_json("pairs", "query", "--pair", "(sl(n+1,R), gl(n,R))", "--bind", "n=3")
        assert code == 0
        assert data["matched"] == "F3"
        assert data["finite_mult"] is True
        assert data["bb"] is True

    def test_query_no_match(self):
        """Тест: пара без совпадения сопровождается пояснением"""
        code, data = run_json("pairs", "query", "--pair", "(sl(3,R), so(1,2))")
        assert code == 0
        assert data["matched"] is None
        assert "note" in data

    def test_bad_binding(self):
        """Тест: подстановка не в формате name=value"""
        code, data = run_json("pairs", "query", "--pair", "(sl(n+1,R), gl(n,R))", "--bind", "n:3")
        assert code == 2
        assert data["error_code"] == "BAD_BINDING"

    def test_list_bb(self):
        """Тест: список BB"""
        code, data = run_json("pairs", "list", "--filter", "bb")
        assert code == 0
        assert [f["tag"] for f in data["families"]] == ["A", "B", "F1", "F2", "F3", "F4", "F5"]

    def test_list_annotations(self):
        """Тест: отдельные аннотированные факты"""
        code, data = run_json("pairs", "list", "--filter", "annotations")
        assert code == 0
        assert data["annotations"]

    def test_complex_missing(self):
        """Тест: sl(3,C) нет в таблице комплексных форм"""
        code, data = run_json("pairs", "complex", "--g", "sl(3,C)")
        assert code == 0
        assert data["match"] is None


class TestRun:
    """Тесты точки входа run"""

    def test_deterministic(self):
        """Тест: одинаковые аргументы дают побайтно одинаковый вывод"""
        argv = ["sl2", "rc", "--l1", "3/2", "--l2", "-5", "--a", "4"]
        assert run(argv) == run(argv)

    def test_sorted_keys(self):
        """Тест: ключи JSON отсортированы"""
        _, output = run(["sl2", "dim", "--l1", "0", "--l2", "0", "--l3", "2"])
        assert output == '{"class": "omega_singular", "dim": 2}'

    def test_text_format(self):
        """Тест: --format text выводит строки key: value"""
        code, output = run(["--format", "text", "sl2", "dim", "--l1", "0", "--l2", "0", "--l3", "2"])
        assert code == 0
        assert output == "class: omega_singular\ndim: 2"

    @pytest.mark.parametrize("flag", [["--format=text"], ["--form", "text"]])
    def test_text_format_spellings(self, flag):
        """Тест: формат берётся из разобранных аргументов, включая сокращения argparse"""
        code, output = run(flag + ["sl2", "dim", "--l1", "0", "--l2", "0", "--l3", "2"])
        assert code == 0
        assert output == "class: omega_singular\ndim: 2"

    def test_text_format_on_usage_error(self):
        """Тест: ошибка разбора выводится в выбранном формате"""
        code, output = run(["--format", "text", "sl2", "dim", "--l1", "0"])
        assert code == 2
        assert "error_code: USAGE" in output.splitlines()

    def test_help(self):
        """Тест: --help завершается успешно и возвращает текст справки"""
        code, data = run_json("--help")
        assert code == 0
        assert "sl2" in data["help"]

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["sl3", "dim"],
            ["sl2", "dim", "--l1", "0"],
            ["sl2", "dim", "--l1", "0", "--l2", "0", "--l3", "2", "--unknown", "1"],
            ["sl2", "dim", "--l1", "-1/2", "--l2", "0", "--l3", "2"],
        ],
    )
    def test_usage_errors(self, argv):
        """Тест: ошибки разбора дают код 2 и объект ошибки"""
        code, data = run_json(*argv)
        assert code == 2
        assert data["error_code"] == "USAGE"
        assert data["error"]
        assert data["hint"]

    def test_bad_rational(self):
        """Тест: нечисловой параметр"""
        code, data = run_json("sl2", "dim", "--l1", "abc", "--l2", "0", "--l3", "2")
        assert code == 2
        assert data["error_code"] == "BAD_RATIONAL"

    def test_negative_order(self):
        """Тест: a < 0 нарушает предусловие"""
        code, data = run_json("sl2", "rc", "--a", "-1")
        assert code == 2
        assert data["error_code"] == "NOT_NATURAL"

    def test_internal_error(self):
        """Тест: непредвиденное исключение даёт код 1"""
        with patch("sbo.handlers.sl2.sbo_dim_sl2", side_effect=RuntimeError("boom")):
            code, data = run_json("sl2", "dim", "--l1", "0", "--l2", "0", "--l3", "2")
        assert code == 1
        assert data["error_code"] == "INTERNAL"


class TestRender:
    """Тесты форматирования результата"""

    def test_text_nested(self):
        """Тест: вложенные значения сериализуются в JSON, None как null"""
        assert render({"b": [1, 2], "a": None}, "text") == "a: null\nb: [1, 2]"

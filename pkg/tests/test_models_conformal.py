"""
Тесты для конформной модели o(n+1,1) на многочленах.

Модуль: sbo/models/conformal.py
"""

from fractions import Fraction

import pytest

from sbo.core.polys import LAM, param
from sbo.models.conformal import (
    DILATION,
    C,
    ConfGenerator,
    R,
    T,
    act_element,
    bracket,
    check_brackets_conf,
    check_restriction_anchor,
    check_subalgebra_closure,
    conf_act,
    full_basis,
    subalgebra_basis,
    x_ring,
)
from sbo.services.validation_service import PreconditionError, VariableMismatchError


class TestConfAct:
    """Тесты действия образующих"""

    def test_dilation_on_constant(self):
        """Тест: D 1 = λ"""
        space = x_ring(2)
        assert conf_act(DILATION, 2, LAM, space.one) == space.ground_new(LAM)

    def test_translation(self):
        """Тест: T1 x1² = 2x1"""
        x1, _ = x_ring(2).gens
        assert conf_act(T(1), 2, LAM, x1**2) == 2 * x1

    def test_rotation(self):
        """Тест: R12 x1 x2 = x1² − x2²"""
        x1, x2 = x_ring(2).gens
        assert conf_act(R(1, 2), 2, LAM, x1 * x2) == x1**2 - x2**2

    def test_special_conformal_on_constant(self):
        """Тест: C1 1 = −2λ x1"""
        space = x_ring(2)
        x1, _ = space.gens
        assert conf_act(C(1), 2, LAM, space.one) == -2 * x1 * space.ground_new(LAM)

    def test_wrong_dimension(self):
        """Тест: многочлен от другого числа переменных"""
        with pytest.raises(VariableMismatchError):
            conf_act(T(1), 3, LAM, x_ring(2).one)

    def test_index_out_of_range(self):
        """Тест: T3 при n = 2"""
        with pytest.raises(PreconditionError) as exc:
            conf_act(T(3), 2, LAM, x_ring(2).one)
        assert exc.value.error_code == "INDEX_OUT_OF_RANGE"


class TestGenerators:
    """Тесты разбора образующих и базисов"""

    @pytest.mark.parametrize("tag, expected", [("T1", T(1)), ("R12", R(1, 2)), ("D", DILATION), ("C3", C(3))])
    def test_parse(self, tag, expected):
        """Тест: разбор меток образующих"""
        assert ConfGenerator.parse(tag) == expected
        assert expected.tag == tag

    @pytest.mark.parametrize("tag", ["R21", "R11", "X1", "T", ""])
    def test_parse_rejects(self, tag):
        """Тест: некорректные метки"""
        with pytest.raises(PreconditionError):
            ConfGenerator.parse(tag)

    @pytest.mark.parametrize("n, size", [(2, 3), (3, 6), (4, 10)])
    def test_subalgebra_size(self, n, size):
        """Тест: dim o(n,1) = n(n+1)/2"""
        assert len(subalgebra_basis(n)) == size

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_full_basis_size(self, n):
        """Тест: dim o(n+1,1) = (n+1)(n+2)/2"""
        assert len(full_basis(n)) == (n + 1) * (n + 2) // 2

    def test_subalgebra_needs_two_dimensions(self):
        """Тест: n = 1 отклоняется"""
        with pytest.raises(PreconditionError):
            subalgebra_basis(1)


class TestBracket:
    """Тесты абстрактных коммутаторов"""

    def test_translation_special_same_index(self):
        """Тест: [T1, C1] = −2D"""
        assert bracket(T(1), C(1)) == {DILATION: Fraction(-2)}

    def test_translation_special_rotation(self):
        """Тест: [T1, C2] = 2R12, [T2, C1] = −2R12"""
        assert bracket(T(1), C(2)) == {R(1, 2): Fraction(2)}
        assert bracket(T(2), C(1)) == {R(1, 2): Fraction(-2)}

    def test_antisymmetry(self):
        """Тест: [Y, X] = −[X, Y] для всех пар при n = 3"""
        gens = full_basis(3)
        for X in gens:
            for Y in gens:
                forward = bracket(X, Y)
                backward = bracket(Y, X)
                assert backward == {g: -c for g, c in forward.items()}

    def test_translations_commute(self):
        """Тест: [T_j, T_k] = 0"""
        assert bracket(T(1), T(2)) == {}

    def test_dilation_grading(self):
        """Тест: [D, T1] = −T1, [D, C1] = C1"""
        assert bracket(DILATION, T(1)) == {T(1): Fraction(-1)}
        assert bracket(DILATION, C(1)) == {C(1): Fraction(1)}

    def test_act_element_is_linear(self):
        """Тест: dπ(2T1 − ½D) f = 2 dπ(T1) f − ½ dπ(D) f"""
        ring = x_ring(2)
        f = ring.gens[0] ** 2 * ring.gens[1] + ring.gens[1]
        element = {T(1): Fraction(2), DILATION: Fraction(-1, 2)}
        expected = conf_act(T(1), 2, LAM, f) * 2 - conf_act(DILATION, 2, LAM, f) * ring.ground_new(param(Fraction(1, 2)))
        assert act_element(element, 2, LAM, f) == expected
        assert act_element({}, 2, LAM, f) == ring.zero


class TestChecks:
    """Тесты точных проверок"""

    def test_brackets_symbolic_plane(self):
        """Тест: n = 2, формальное λ, степень до 6"""
        report = check_brackets_conf(2, LAM, 6)
        assert report.passed, report.failures[:3]
        assert report.checked == 28 * 15

    def test_brackets_three_dimensions(self):
        """Тест: n = 3, λ = 1/2, степень до 3"""
        assert check_brackets_conf(3, Fraction(1, 2), 3).passed

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_subalgebra_closure(self, n):
        """Тест: подалгебра замкнута"""
        assert check_subalgebra_closure(n).passed

    @pytest.mark.parametrize("n", [2, 3])
    def test_restriction_anchor(self, n):
        """Тест: ограничение на x_n = 0 сплетает dπ_λ и dπ′_λ"""
        assert check_restriction_anchor(n, LAM, 4).passed

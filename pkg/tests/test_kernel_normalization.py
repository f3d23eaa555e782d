"""
Тесты для гамма-нормировок и численной эквивариантности.

Модули: sbo/kernel/normalization.py, sbo/kernel/equivariance.py
"""

import math
from fractions import Fraction

import pytest

from sbo.config.kernel_config import KernelConfig
from sbo.kernel.bumps import BumpFunction
from sbo.kernel.equivariance import default_y_grid, numeric_equivariance
from sbo.kernel.normalization import kernel_eval_normalized, normalization
from sbo.kernel.quadrature import kernel_eval
from sbo.models.conformal import DILATION, T, subalgebra_basis
from sbo.services.validation_service import PreconditionError


class TestNormalization:
    """Тесты множителей 1/Γ"""

    def test_pole_of_second_gamma(self):
        """Тест: (λ − ν)/2 = −3 даёт tilde = 0"""
        tilde, renorm = normalization(Fraction(0), Fraction(6), 2)
        assert tilde == 0.0
        assert renorm == pytest.approx(1 / math.gamma(2.5))

    def test_equal_parameters(self):
        """Тест: λ = ν = 1, n = 2: tilde = 0, renorm = 1/√π"""
        tilde, renorm = normalization(Fraction(1), Fraction(1), 2)
        assert tilde == 0.0
        assert renorm == pytest.approx(1 / math.sqrt(math.pi))

    def test_generic_point(self):
        """Тест: вне полюсов оба множителя конечны и ненулевые"""
        tilde, renorm = normalization(4.0, 0.5, 2)
        assert renorm == pytest.approx(1 / math.gamma(1.75))
        assert tilde == pytest.approx(1 / math.gamma(1.75) ** 2)

    def test_float_pole(self):
        """Тест: полюс в вещественной арифметике тоже даёт 0"""
        tilde, _ = normalization(0.0, 4.0, 2)
        assert tilde == 0.0

    def test_bad_variant(self):
        """Тест: неизвестная нормировка"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5)
        with pytest.raises(PreconditionError) as exc:
            kernel_eval_normalized(cfg, BumpFunction(cfg.bump_spec()), variant="other")
        assert exc.value.error_code == "BAD_VARIANT"

    def test_normalized_value(self):
        """Тест: нормированное значение равно сырому, умноженному на множитель"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5, levels=2, base_level=2, tolerance=10.0)
        f = BumpFunction(cfg.bump_spec())
        raw = kernel_eval(cfg, f)
        tilde, renorm = normalization(4.0, 0.5, 2)
        assert kernel_eval_normalized(cfg, f, variant="tilde").value == pytest.approx(raw.value * tilde)
        assert kernel_eval_normalized(cfg, f, variant="renorm").value == pytest.approx(raw.value * renorm)


class TestEquivariance:
    """Тесты численной проверки эквивариантности"""

    def test_grid_size(self):
        """Тест: по пять сдвигов на координату y"""
        assert len(default_y_grid(KernelConfig(n=2, lam=4, nu=0.5))) == 5
        assert len(default_y_grid(KernelConfig(n=3, lam=4, nu=0.5))) == 25

    def test_generator_outside_subalgebra(self):
        """Тест: T2 при n = 2 не сохраняет гиперплоскость"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5)
        with pytest.raises(PreconditionError) as exc:
            numeric_equivariance(cfg, T(2), BumpFunction(cfg.bump_spec()))
        assert exc.value.error_code == "NOT_IN_SUBALGEBRA"

    def test_zero_function_residual(self):
        """Тест: для f ≡ 0 невязка считается нулевой"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5, levels=2)
        f = BumpFunction(cfg.bump_spec(), scale=0.0)
        result = numeric_equivariance(cfg, DILATION, f, y_points=[[0.0]])
        assert result.residual == 0.0
        assert result.samples == 1

    @pytest.mark.slow
    def test_default_bump_equivariant(self):
        """Тест: n = 2, λ = 4, ν = 1/2: невязка < 1e-3 для всех образующих o(2,1)"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5)
        f = BumpFunction(cfg.bump_spec())
        for X in subalgebra_basis(cfg.n):
            assert numeric_equivariance(cfg, X, f).residual < 1e-3

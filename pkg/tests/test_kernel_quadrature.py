"""
Тесты для квадратуры интегрального оператора и пробных функций.

Модули: sbo/kernel/quadrature.py, sbo/kernel/bumps.py
"""

import math

import numpy as np
import pytest

from sbo.config.kernel_config import BumpSpec, KernelConfig, ModulationTerm
from sbo.kernel.bumps import BumpFunction, GeneratorImage
from sbo.kernel.quadrature import (
    KernelResult,
    _composite,
    _direction_rule,
    _sphere_rule,
    _weighted_composite,
    kernel_eval,
)
from sbo.models.conformal import DILATION, T
from sbo.services.validation_service import ConvergenceDomainError, QuadratureError


class TestRules:
    """Тесты одномерных и угловых правил"""

    def test_composite_weights(self):
        """Тест: сумма весов равна длине отрезка"""
        x, w = _composite(-1.0, 3.0, 3, 4)
        assert len(x) == 8 * 4
        assert w.sum() == pytest.approx(4.0)
        assert np.all((x > -1.0) & (x < 3.0))

    def test_singular_weight_left(self):
        """Тест: ∫_0^1 x^{−1/2} dx = 2 и ∫_0^1 x^{−1/2}·x dx = 2/3 точно"""
        x, w = _weighted_composite(0.0, 1.0, 2, 6, -0.5, 0.0)
        assert w.sum() == pytest.approx(2.0, rel=1e-8)
        assert np.sum(w * x) == pytest.approx(2.0 / 3.0, rel=1e-8)
        assert np.all((x > 0.0) & (x < 1.0))

    def test_singular_weight_right(self):
        """Тест: ∫_{−1}^{0} |x|^{−0.9} dx = 10"""
        _, w = _weighted_composite(-1.0, 0.0, 3, 6, -0.9, 0.0)
        assert w.sum() == pytest.approx(10.0, rel=1e-8)

    def test_zero_exponent_is_legendre(self):
        """Тест: при нулевом показателе правило совпадает с составным Гауссом"""
        x, w = _weighted_composite(0.0, 2.0, 2, 4, 0.0, 0.0)
        x0, w0 = _composite(0.0, 2.0, 2, 4)
        assert np.array_equal(x, x0) and np.array_equal(w, w0)

    @pytest.mark.parametrize("dim,area", [(0, 2.0), (1, 2 * np.pi), (2, 4 * np.pi)])
    def test_sphere_area(self, dim, area):
        """Тест: площадь S^dim и единичная длина узлов"""
        nodes, weights, _ = _sphere_rule(dim, 2, 6)
        assert weights.sum() == pytest.approx(area, rel=1e-10)
        assert np.allclose(np.linalg.norm(nodes, axis=1), 1.0)

    @pytest.mark.parametrize("beta", [-0.5, 0.0, 2.0, 3.9])
    def test_direction_weight_circle(self, beta):
        """Тест: ∫_{S^1} |θ_2|^β dθ = 2√π Γ((β+1)/2)/Γ(β/2+1)"""
        _, weights, cells = _direction_rule(2, beta, 2, 6)
        expected = 2 * math.sqrt(math.pi) * math.gamma((beta + 1) / 2) / math.gamma(beta / 2 + 1)
        assert weights.sum() == pytest.approx(expected, rel=1e-8)
        assert cells == 2 * 4

    def test_direction_weight_sphere(self):
        """Тест: ∫_{S^2} |θ_3|^β dθ = 4π/(β+1) при β = −1/2"""
        _, weights, _ = _direction_rule(3, -0.5, 2, 6)
        assert weights.sum() == pytest.approx(4 * math.pi / 0.5, rel=1e-8)


class TestBumpFunction:
    """Тесты пробных функций"""

    def test_zero_outside_support(self):
        """Тест: вне шара функция и градиент равны нулю"""
        f = BumpFunction(BumpSpec(center=[0.0, 0.0], radius=1.0))
        points = np.array([[2.0, 0.0], [0.0, -1.0], [0.8, 0.8]])
        assert np.all(f.values(points) == 0.0)
        assert np.all(f.gradient(points) == 0.0)

    def test_gradient_matches_difference(self):
        """Тест: точный градиент согласован с центральной разностью"""
        spec = BumpSpec(center=[0.1, 0.2], radius=1.5, modulation=[ModulationTerm(coeff=2.0, exps=[1, 2])])
        f = BumpFunction(spec)
        point = np.array([[0.3, -0.4]])
        h = 1e-6
        for k in range(2):
            shift = np.zeros((1, 2))
            shift[0, k] = h
            numeric = (f.values(point + shift) - f.values(point - shift)) / (2 * h)
            assert f.gradient(point)[0, k] == pytest.approx(numeric[0], rel=1e-5)

    def test_scaled(self):
        """Тест: масштабирование умножает значения"""
        f = BumpFunction(BumpSpec(center=[0.0, 0.0]))
        point = np.array([[0.1, 0.1]])
        assert f.scaled(3.0).values(point)[0] == pytest.approx(3.0 * f.values(point)[0])

    def test_generator_image(self):
        """Тест: dπ_λ(T1) f = ∂_1 f, dπ_λ(D) f = E f + λ f"""
        f = BumpFunction(BumpSpec(center=[0.0, 0.0]))
        point = np.array([[0.2, 0.3]])
        grad = f.gradient(point)[0]
        value = f.values(point)[0]
        assert GeneratorImage(T(1), 2.0, f).values(point)[0] == pytest.approx(grad[0])
        expected = 0.2 * grad[0] + 0.3 * grad[1] + 2.0 * value
        assert GeneratorImage(DILATION, 2.0, f).values(point)[0] == pytest.approx(expected)


class TestKernelEval:
    """Тесты значения A_{λ,ν} f"""

    def test_zero_function(self):
        """Тест: f ≡ 0 даёт ровно 0"""
        spec = BumpSpec(center=[0.0, 0.5], modulation=[ModulationTerm(coeff=0.0, exps=[0, 0])])
        cfg = KernelConfig(n=2, lam=4, nu=0.5, levels=2)
        result = kernel_eval(cfg, BumpFunction(spec))
        assert result.value == 0.0
        assert result.error_estimate == 0.0

    def test_outside_domain(self):
        """Тест: вне области сходимости"""
        cfg = KernelConfig(n=2, lam=1, nu=2)
        with pytest.raises(ConvergenceDomainError):
            kernel_eval(cfg, BumpFunction(cfg.bump_spec()))

    def test_convergence_ratios(self):
        """Тест: отношения последовательных разностей"""
        result = KernelResult(value=1.0, error_estimate=0.0, cells=1, estimates=(0.0, 0.8, 0.9, 0.95, 0.95))
        assert result.differences() == pytest.approx([0.8, 0.1, 0.05, 0.0])
        assert result.convergence_ratios() == pytest.approx([0.125, 0.5, 0.0])

    def test_deterministic(self):
        """Тест: повторный расчёт даёт то же число"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5, levels=2, base_level=1, tolerance=10.0)
        f = BumpFunction(cfg.bump_spec())
        assert kernel_eval(cfg, f).value == kernel_eval(cfg, f).value

    @pytest.mark.slow
    def test_default_bump_converges(self):
        """Тест: n = 2, λ = 4, ν = 1/2: разности убывают, относительная погрешность < 1e-4"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5)
        result = kernel_eval(cfg, BumpFunction(cfg.bump_spec()))
        assert result.value > 0
        assert result.error_estimate < 1e-4 * abs(result.value)
        assert all(r < 0.5 for r in result.convergence_ratios())

    def test_roundoff_differences_ignored(self):
        """Тест: разности на уровне округления не портят отношения"""
        result = KernelResult(value=2.0, error_estimate=0.0, cells=1, estimates=(1.9, 2.0, 2.0 + 1e-16, 2.0))
        assert result.convergence_ratios() == [0.0, 0.0]

    def test_not_converged(self):
        """Тест: слишком грубая сетка при жёстком допуске даёт QuadratureError"""
        cfg = KernelConfig(n=2, lam=4, nu=0.5, points=1, base_level=0, levels=2, tolerance=1e-12)
        with pytest.raises(QuadratureError) as exc:
            kernel_eval(cfg, BumpFunction(cfg.bump_spec()))
        assert exc.value.error_code == "QUADRATURE"


class GaussianFunction:
    """exp(−|x|²) на кубе [−8, 8]^dim; за его пределами значения пренебрежимо малы."""

    def __init__(self, dim):
        self.dim = dim

    def support(self):
        return np.full(self.dim, -8.0), np.full(self.dim, 8.0)

    def values(self, points):
        return np.exp(-np.einsum("ij,ij->i", points, points))


def _gaussian_at_origin(n, lam, nu):
    """½Γ((λ−ν)/2) · ∫_{S^{n−1}} |θ_n|^β dθ для n = 2, 3."""

    beta = lam + nu - n
    radial = 0.5 * math.gamma((lam - nu) / 2)
    if n == 2:
        angular = 2 * math.sqrt(math.pi) * math.gamma((beta + 1) / 2) / math.gamma(beta / 2 + 1)
    else:
        angular = 4 * math.pi / (beta + 1)
    return radial * angular


class TestSingularCorner:
    """Тесты особенности в точке (y, 0) при настройках по умолчанию"""

    @pytest.mark.parametrize("lam,nu", [(2.0, 1.5), (1.2, 0.3), (3.0, 2.9), (4.0, 0.5)])
    def test_gaussian_closed_form(self, lam, nu):
        """Тест: значение на гауссиане совпадает с замкнутой формулой"""
        cfg = KernelConfig(n=2, lam=lam, nu=nu)
        result = kernel_eval(cfg, GaussianFunction(2))
        assert result.value == pytest.approx(_gaussian_at_origin(2, lam, nu), rel=1e-6)

    def test_gaussian_closed_form_three_dimensions(self):
        """Тест: n = 3, λ = 5/2, ν = 1 на грубой сетке"""
        cfg = KernelConfig(n=3, lam=2.5, nu=1.0, base_level=1, levels=3)
        result = kernel_eval(cfg, GaussianFunction(3))
        assert result.value == pytest.approx(_gaussian_at_origin(3, 2.5, 1.0), rel=1e-5)

    @pytest.mark.parametrize("lam,nu", [(2.0, 1.5), (1.2, 0.3), (3.0, 2.9)])
    def test_bump_converges(self, lam, nu):
        """Тест: шапочка в области сходимости сходится с допуском по умолчанию"""
        cfg = KernelConfig(n=2, lam=lam, nu=nu, y=[0.3])
        result = kernel_eval(cfg, BumpFunction(cfg.bump_spec()))
        assert result.value > 0
        assert result.error_estimate <= 1e-4 * result.value

    def test_scaling_linearity(self):
        """Тест: A(2f) = 2·A(f)"""
        cfg = KernelConfig(n=2, lam=2.0, nu=1.5)
        f = BumpFunction(cfg.bump_spec())
        assert kernel_eval(cfg, f.scaled(2.0)).value == pytest.approx(2 * kernel_eval(cfg, f).value, rel=1e-12)

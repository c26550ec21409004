import cmath
import math

import mpmath
import numpy as np
from django.test import SimpleTestCase

from picardlab.exceptions import PoleError, RegimeError, UndefinedError
from picardlab.specfun import (
    bessel_J, bessel_K_imag, bessel_addition_check, euler_integral_2f1, gamma_c, gamma_product_check, h_check,
    hyp2f1, hyp2f1_regime, motohashi_K, motohashi_K_bessel, motohashi_K_series, scaled_bessel_K_imag,
    stirling_modulus, stirling_ratio,
)


class GammaTest(SimpleTestCase):
    def test_half(self):
        self.assertAlmostEqual(abs(gamma_c(0.5) - math.sqrt(math.pi)), 0, places=13)

    def test_poles(self):
        for z in (0, -1, -4):
            with self.assertRaises(PoleError):
                gamma_c(z)

    def test_reflection_product(self):
        self.assertLess(gamma_product_check(1.0), 1e-10)
        worst = max(gamma_product_check(r) for r in np.linspace(0, 10, 101))
        self.assertLess(worst, 1e-10)

    def test_stirling_modulus(self):
        ratio = abs(gamma_c(2 + 50j)) / stirling_modulus(2, 50)
        self.assertLess(abs(ratio - 1), 0.02)
        self.assertLess(abs(stirling_ratio(2 + 50j) - 1), 0.02)
        self.assertLess(abs(stirling_ratio(2 + 200j) - 1), 0.005)


class BesselJTest(SimpleTestCase):
    def test_values_at_zero(self):
        self.assertEqual(bessel_J(0, 0.0), 1.0)
        for m in range(1, 6):
            self.assertEqual(bessel_J(2 * m, 0.0), 0.0)

    def test_first_zero(self):
        self.assertLess(abs(bessel_J(0, 2.4048255577)), 1e-8)

    def test_negative_argument(self):
        with self.assertRaises(ValueError):
            bessel_J(0, -1.0)


class BesselKTest(SimpleTestCase):
    def test_order_zero(self):
        self.assertAlmostEqual(bessel_K_imag(0, 1.0), 0.4210244382407083, places=10)

    def test_even_in_r(self):
        for r in (0.3, 2.0, 5.5):
            self.assertLess(abs(bessel_K_imag(r, 0.7) - bessel_K_imag(-r, 0.7)), 1e-12)

    def test_large_argument_asymptotics(self):
        x, r = 30.0, 1.0
        value = bessel_K_imag(r, x)
        leading = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
        self.assertLess(abs(value / leading - 1), 0.1)
        mu = -16 * r * r
        series = 1 + (mu - 1) / (8 * x) + (mu - 1) * (mu - 9) / (2 * (8 * x) ** 2)
        self.assertLess(abs(value / (leading * series) - 1), 1e-3)

    def test_against_mpmath(self):
        for r, x in ((0.5, 0.2), (3.0, 1.5), (1.2, 8.0)):
            expected = float(mpmath.re(mpmath.besselk(2j * r, x)))
            self.assertLess(abs(bessel_K_imag(r, x) - expected), 1e-10)

    def test_scaled_paths_agree_at_the_switch(self):
        from picardlab.specfun import _scaled_k_mp
        self.assertLess(abs(scaled_bessel_K_imag(6.0, 2.0) - _scaled_k_mp(6.0, 2.0)), 1e-7)

    def test_nonpositive_argument(self):
        with self.assertRaises(ValueError):
            bessel_K_imag(1.0, 0.0)


class Hyp2F1Test(SimpleTestCase):
    def test_at_zero(self):
        self.assertEqual(hyp2f1(0.3, 1.2 + 1j, 2.5, 0), 1)

    def test_logarithm(self):
        self.assertLess(abs(hyp2f1(1, 1, 2, 0.5) + math.log(0.5) / 0.5), 1e-10)

    def test_euler_integral(self):
        a = b = 0.4 + 0.3j
        self.assertLess(abs(hyp2f1(a, b, 1.6, -2) - euler_integral_2f1(a, b, 1.6, -2)), 1e-8)

    def test_regimes(self):
        self.assertEqual(hyp2f1_regime(1, 1, 2, 0.5), 'series')
        self.assertEqual(hyp2f1_regime(1, 1, 2, -2), 'pfaff')
        self.assertEqual(hyp2f1_regime(0.5, 0.25, 1, -20), 'inverse')

    def test_inverse_connection_against_mpmath(self):
        for a, b, c, z in ((0.5, 0.25, 1, -20), (1.4 + 2j, 1.4 - 2j, 1, -30), (0.6 + 0.5j, 1.1 - 0.5j, 1 + 3j, -12)):
            expected = complex(mpmath.hyp2f1(a, b, c, z))
            self.assertLess(abs(hyp2f1(a, b, c, z) - expected), 1e-9 * max(1.0, abs(expected)))

    def test_unsupported_regimes(self):
        with self.assertRaises(RegimeError):
            hyp2f1(1, 1, 2, 2)
        with self.assertRaises(RegimeError):
            hyp2f1(1, 1, -1, 0.5)
        with self.assertRaises(RegimeError):
            hyp2f1(0.5, 0.5, 1, -20)
        with self.assertRaises(RegimeError):
            euler_integral_2f1(1, 2, 1.5, -1)


class MotohashiKernelTest(SimpleTestCase):
    def setUp(self):
        self.u = 1.5 * cmath.exp(1j * math.pi / 7)

    def test_representations_agree(self):
        self.assertLess(abs(motohashi_K(0.3, self.u) - motohashi_K_series(0.3, self.u, 40)), 1e-6)

    def test_bessel_product_definition(self):
        for r in (0.3, 1.1):
            self.assertLess(abs(motohashi_K(r, self.u) - motohashi_K_bessel(1j * r, self.u)), 1e-6)

    def test_real_argument(self):
        self.assertLess(abs(motohashi_K_bessel(0.7j, 2.0).imag), 1e-9)
        self.assertLess(abs(motohashi_K(0.7, 2.0).imag), 1e-9)

    def test_even_in_r(self):
        self.assertLess(abs(motohashi_K(0.3, self.u) - motohashi_K(-0.3, self.u)), 1e-12)

    def test_zero_argument(self):
        with self.assertRaises(UndefinedError):
            motohashi_K(0.3, 0)
        with self.assertRaises(UndefinedError):
            motohashi_K_series(0.3, 0)

    def test_integer_order(self):
        with self.assertRaises(PoleError):
            motohashi_K_bessel(2, self.u)


class TransformTest(SimpleTestCase):
    def setUp(self):
        self.gaussian = lambda r: np.exp(-r ** 2)

    def test_small_argument_decay(self):
        from picardlab.moments import decay_slope
        us = [1e-3, 3e-3, 1e-2, 3e-2, 1e-1]
        slope = decay_slope(us, [h_check(u, self.gaussian) for u in us])
        self.assertTrue(1.3 <= slope <= 2.2, slope)

    def test_large_argument_bounded(self):
        near = max(abs(h_check(u, self.gaussian)) for u in (1.0, 3.0, 10.0))
        far = max(abs(h_check(u, self.gaussian)) for u in (20.0, 50.0, 100.0))
        self.assertLessEqual(far, near)

    def test_linear_in_h(self):
        other = lambda r: r ** 2 * np.exp(-(r / 2) ** 2)
        u = 0.8 * cmath.exp(0.4j)
        combined = h_check(u, lambda r: self.gaussian(r) + other(r))
        self.assertLess(abs(combined - h_check(u, self.gaussian) - h_check(u, other)), 1e-10)

    def test_weight_sets_its_own_window(self):
        from picardlab.moments import WeightSpec
        weight = WeightSpec(K=2.0, G=1.0)
        self.assertTrue(np.isfinite(h_check(0.5, weight)))

    def test_zero_argument(self):
        with self.assertRaises(UndefinedError):
            h_check(0, self.gaussian)


class BesselAdditionTest(SimpleTestCase):
    def test_examples(self):
        self.assertLess(bessel_addition_check(1.3, 0.7, 2.1, math.pi / 5, 40), 1e-8)
        self.assertLess(bessel_addition_check(1.3, 0.7, 2.1, math.pi / 2, 40), 1e-8)
        self.assertLess(bessel_addition_check(0.9, 0.9, 1.7, 0.0, 40), 1e-8)

    def test_random_panel(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            a, b, z = rng.uniform(0.2, 2, size=3)
            self.assertLess(bessel_addition_check(a, b, z, rng.uniform(0, math.pi / 2)), 1e-8)

    def test_domain(self):
        with self.assertRaises(ValueError):
            bessel_addition_check(1.0, 1.0, 1.0, 2.0)

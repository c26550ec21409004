import math
from unittest import skipUnless

import numpy as np
import pydantic
from django.conf import settings
from django.test import SimpleTestCase

from picardlab.exceptions import RegimeError, UndefinedError, WeightTooWideError
from picardlab.gint import GaussianInt
from picardlab.moments import (
    I_weight, I_zero, WeightSpec, decay_slope, gaussian_integral_numeric, gaussian_integral_oracle, h_star,
    h_star_alt, h_star_simple, h_weight, hermite_P, omega_T, psi, psi_from_mellin, psi_mellin_closed,
    psi_mellin_numeric, q_N, x_pm,
)

SLOW = settings.PICARDLAB['SLOW_TESTS']


class WeightTest(SimpleTestCase):
    def setUp(self):
        self.weight = WeightSpec(K=3.0, N=2, G=1.0, X=4.0)

    def test_q_N_zeros(self):
        for N in (1, 2, 3):
            for k in range(1, N + 1):
                for z in (1j * k, -1j * k, 1j * (k - 0.5), -1j * (k - 0.5)):
                    self.assertEqual(abs(q_N(z, N)), 0, f"N={N} z={z}")

    def test_q_N_tends_to_one(self):
        self.assertLess(abs(q_N(1000.0, 2) - 1), 1e-2)

    def test_q_N_needs_positive_order(self):
        with self.assertRaises(ValueError):
            q_N(1.0, 0)

    def test_h_is_even(self):
        rs = np.linspace(0.1, 8, 40)
        self.assertLess(np.max(np.abs(h_weight(rs, self.weight) - h_weight(-rs, self.weight))), 1e-12)

    def test_h_vanishes_where_q_N_does(self):
        for z in (1j, 2j, 0.5j, 1.5j):
            self.assertEqual(abs(self.weight(z)), 0)

    def test_omega_T(self):
        T = 100.0
        G = T ** 0.1
        self.assertLess(abs(omega_T(1.5 * T, T, G) - 1), 1e-6)
        self.assertAlmostEqual(omega_T(T, T, G), 0.5, places=6)
        self.assertLess(omega_T(4 * T, T, G), 1e-6)
        with self.assertRaises(ValueError):
            omega_T(1.0, 0, 1.0)

    def test_weight_validation(self):
        with self.assertRaises(pydantic.ValidationError):
            WeightSpec(K=0)
        with self.assertRaises(pydantic.ValidationError):
            WeightSpec(K=1.0, N=4)
        with self.assertRaises(pydantic.ValidationError):
            WeightSpec(K=1.0, X=0.5)

    def test_too_wide_weight(self):
        with self.assertRaises(WeightTooWideError):
            WeightSpec(K=20.0, G=2.0).r_rule()


class GaussianIntegralTest(SimpleTestCase):
    def test_hermite_polynomials(self):
        root_pi = math.sqrt(math.pi)
        self.assertAlmostEqual(hermite_P(0)(0.0), root_pi)
        self.assertAlmostEqual(hermite_P(1)(2.0), root_pi)
        self.assertAlmostEqual(hermite_P(2)(0.0), root_pi / 2)
        with self.assertRaises(ValueError):
            hermite_P(-1)

    def test_oracle_examples(self):
        self.assertAlmostEqual(abs(gaussian_integral_oracle(1, 0) - math.sqrt(math.pi)), 0, places=12)
        self.assertAlmostEqual(abs(gaussian_integral_oracle(1, 0, 2) - math.sqrt(math.pi) / 2), 0, places=12)

    def test_numeric_matches_oracle(self):
        panel = [(1, 0, 0), (1, 2, 0), (1.3 + 0.2j, 0.5 - 1j, 1), (0.8, 1 + 1j, 2), (1.1 - 0.3j, -0.7, 3)]
        for p, q, n in panel:
            self.assertLess(abs(gaussian_integral_oracle(p, q, n) - gaussian_integral_numeric(p, q, n)), 1e-10)

    def test_divergent(self):
        with self.assertRaises(RegimeError):
            gaussian_integral_oracle(1j, 0)


class MellinTest(SimpleTestCase):
    def test_psi_mellin_closed_form(self):
        weight = WeightSpec(K=1.0, N=2, G=0.6)
        numeric = psi_mellin_numeric(1, math.pi / 4, 1.2, weight)
        closed = psi_mellin_closed(1, math.pi / 4, 1.2, weight)
        self.assertLess(abs(numeric - closed) / abs(closed), 1e-6)

    def test_tau_range(self):
        weight = WeightSpec(K=1.0)
        with self.assertRaises(ValueError):
            psi(1, math.pi / 2, 1.0, weight)

    def test_inversion(self):
        weight = WeightSpec(K=1.0, N=2, G=1.0)
        direct = psi(1, math.pi / 4, 0.7, weight)
        inverted = psi_from_mellin(1, math.pi / 4, 0.7, weight)
        self.assertLess(abs(direct - inverted) / abs(direct), 1e-6)

    @skipUnless(SLOW, "set PICARDLAB_SLOW_TESTS=true")
    def test_inversion_on_a_longer_line(self):
        weight = WeightSpec(K=1.0, N=2, G=1.0)
        direct = psi(1, math.pi / 4, 0.7, weight)
        inverted = psi_from_mellin(1, math.pi / 4, 0.7, weight, t_max=60.0, step=0.5)
        self.assertLess(abs(direct - inverted) / abs(direct), 1e-9)

    def test_psi_vanishes_at_small_z(self):
        weight = WeightSpec(K=1.0, N=2, G=1.0)
        zs = np.geomspace(1e-3, 1e-1, 5)
        values = [psi(1, math.pi / 4, z, weight) for z in zs]
        self.assertGreater(decay_slope(zs, values), 1.0)

    def test_psi_decays_in_m(self):
        weight = WeightSpec(K=1.0, N=2, G=1.0)
        values = [abs(psi(m, math.pi / 4, 0.7, weight)) for m in range(10, 15)]
        for lower, upper in zip(values, values[1:]):
            self.assertLess(upper / lower, 1)

    def test_inversion_line(self):
        with self.assertRaises(RegimeError):
            psi_from_mellin(1, math.pi / 4, 0.7, WeightSpec(K=1.0), a=0.5)


class HStarTest(SimpleTestCase):
    def setUp(self):
        self.weight = WeightSpec(K=1.0, N=2, G=1.0)
        self.tau = math.pi / 4

    def test_vanishes_at_minus_one(self):
        ratio = abs(h_star(1, self.tau, -1, self.weight)) / abs(h_star(1, self.tau, 0.5, self.weight))
        self.assertLess(ratio, 1e-6)

    def test_contour_shift_and_cosine_form(self):
        value = h_star(1, self.tau, 0.5, self.weight)
        shifted = h_star(1, self.tau, 0.5, self.weight, shift=2.75)
        self.assertLess(abs(value - shifted) / abs(value), 1e-6)
        self.assertLess(abs(value - h_star_alt(1, self.tau, 0.5, self.weight)) / abs(value), 1e-6)

    def test_contour_depth_limits(self):
        with self.assertRaises(RegimeError):
            h_star(1, self.tau, 0.5, self.weight, shift=3.5)
        with self.assertRaises(RegimeError):
            h_star(1, self.tau, 0.5, self.weight, shift=2.0)

    def test_simple_form_vanishes_at_half_integers(self):
        scale = abs(h_star_simple(1.2, self.weight))
        self.assertLess(abs(h_star_simple(0.5, self.weight)), 1e-12 * scale)
        self.assertLess(abs(h_star_simple(-0.5, self.weight, shift=2.75)), 1e-6 * scale)


class IntegralITest(SimpleTestCase):
    def test_representations_agree(self):
        weight = WeightSpec(K=5.0, N=2, G=1.0)
        n, tau, s = GaussianInt(3, 2), math.pi / 3, 0.6 + 0.2j
        first = I_weight(n, tau, s, weight, rep=1)
        second = I_weight(n, tau, s, weight, rep=2)
        self.assertLess(abs(first - second) / abs(first), 1e-5)

    def test_decay_in_n(self):
        weight = WeightSpec(K=0.5, N=2, G=2.0)
        ns = list(range(3, 11))
        values = [I_weight(GaussianInt(n), math.pi / 3, 0.6, weight) for n in ns]
        self.assertLessEqual(decay_slope(ns, values), -2)

    def test_zero_forms_agree(self):
        weight = WeightSpec(K=1.0, N=2, G=1.0)
        via_h_star = I_zero(math.pi / 4, 0.6, weight)
        direct = I_zero(math.pi / 4, 0.6, weight, form='direct')
        self.assertLess(abs(via_h_star - direct) / abs(direct), 1e-5)

    def test_right_half_plane(self):
        with self.assertRaises(RegimeError):
            I_weight(GaussianInt(3), math.pi / 3, 1.0, WeightSpec(K=1.0))


class XPlusMinusTest(SimpleTestCase):
    def test_large_n_limit(self):
        tau = math.pi / 4
        xs = x_pm(GaussianInt(1000), tau)
        expected = 1000 ** 2 / (4 * math.cos(tau) ** 2)
        self.assertLess(abs(xs.x_plus / expected - 1), 1e-2)
        self.assertLess(abs(xs.x_minus / expected - 1), 1e-2)

    def test_ordering_and_angle(self):
        xs = x_pm(GaussianInt(3), math.pi / 3)
        self.assertGreater(xs.c_plus, xs.c_minus)
        self.assertEqual(xs.theta, 0.0)
        self.assertAlmostEqual(x_pm(GaussianInt(0, 2), 0.5).theta, math.pi / 2)

    def test_zero(self):
        with self.assertRaises(UndefinedError):
            x_pm(GaussianInt(0), math.pi / 4)

    def test_real_n_closed_form(self):
        for n, tau in ((5, 0.3), (3, 1.1), (12, math.pi / 3)):
            xs = x_pm(GaussianInt(n), tau)
            plus = (n + 2 * math.sin(tau)) ** 2 / (2 * math.cos(tau)) ** 2
            minus = (n - 2 * math.sin(tau)) ** 2 / (2 * math.cos(tau)) ** 2
            self.assertAlmostEqual(xs.x_plus / plus, 1, places=12)
            self.assertAlmostEqual(xs.x_minus / minus, 1, places=12)

    def test_lower_bound(self):
        rng = np.random.default_rng(5)
        for _ in range(500):
            n = GaussianInt(int(rng.integers(-10, 11)), int(rng.integers(-10, 11)))
            if not n:
                continue
            tau = float(rng.uniform(0.05, 1.5))
            xs = x_pm(n, tau)
            bound = ((math.sqrt(n.norm()) - 2 * math.sin(tau)) / (2 * math.cos(tau))) ** 2
            for value in (xs.x_plus, xs.x_minus):
                self.assertGreaterEqual(value, bound * (1 - 1e-12) - 1e-12)

    def test_minus_branch_near_right_angle(self):
        gaps = (0.1, 0.03, 0.01)
        ratios = [x_pm(GaussianInt(2), math.pi / 2 - gap).x_minus / (gap ** 2 / 4) for gap in gaps]
        errors = [abs(ratio - 1) for ratio in ratios]
        self.assertEqual(errors, sorted(errors, reverse=True))
        self.assertLess(errors[-1], 1e-3)

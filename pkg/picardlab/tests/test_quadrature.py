import math

import numpy as np
from django.test import SimpleTestCase

from picardlab.quadrature import gl_panels, graded_edges, symmetric_edges, tanh_sinh, tanh_sinh_gaps, uniform_edges


class GaussLegendreTest(SimpleTestCase):
    def test_polynomials_exact(self):
        x, w = gl_panels([0.0, 0.5, 2.0], 5)
        self.assertAlmostEqual(np.dot(x ** 9, w), 2.0 ** 10 / 10, places=10)

    def test_oscillatory_integral(self):
        x, w = gl_panels(uniform_edges(0.0, 20.0, 1.0))
        self.assertAlmostEqual(np.dot(np.cos(3 * x), w), math.sin(60.0) / 3, places=12)

    def test_symmetric_edges_keep_zero_off_the_nodes(self):
        edges = symmetric_edges(7.3, 0.5)
        self.assertIn(0.0, edges)
        x, _ = gl_panels(edges, 10)
        self.assertGreater(np.min(np.abs(x)), 0)

    def test_graded_edges(self):
        edges = graded_edges(0.0, 1.0, 0.5, 1e-6, toward='a')
        self.assertEqual(edges[0], 0.0)
        self.assertEqual(edges[-1], 1.0)
        self.assertLess(edges[1], 1e-5)
        self.assertTrue(np.all(np.diff(edges) > 0))


class TanhSinhTest(SimpleTestCase):
    def test_endpoint_singularity(self):
        x, w = tanh_sinh(0.0, 1.0, 32)
        lower, _ = tanh_sinh_gaps(0.0, 1.0, 32)
        self.assertAlmostEqual(np.dot(lower ** -0.5, w), 2.0, places=8)
        self.assertTrue(np.allclose(lower, x))

    def test_gaps_cover_interval(self):
        lower, upper = tanh_sinh_gaps(-1.0, 3.0, 16)
        self.assertTrue(np.allclose(lower + upper, 4.0))
        self.assertTrue(np.all(upper > 0))


class QuadratureSpecTest(SimpleTestCase):
    def test_from_settings(self):
        from django.conf import settings
        from picardlab.quadrature import QuadratureSpec
        spec = QuadratureSpec.from_settings('tanh-sinh')
        self.assertEqual(spec.abs_tol, settings.PICARDLAB['ABS_TOL'])
        self.assertEqual(spec.max_nodes, settings.PICARDLAB['MAX_NODES'])
        x, _ = spec.rule(0.0, 1.0)
        self.assertLessEqual(x.size, spec.max_nodes)

    def test_gauss_legendre_rule(self):
        from picardlab.quadrature import QuadratureSpec
        x, w = QuadratureSpec().rule(0.0, math.pi, panels=4)
        self.assertAlmostEqual(np.dot(np.sin(x), w), 2.0, places=12)

    def test_bounds_enforced(self):
        from pydantic import ValidationError
        from picardlab.quadrature import QuadratureSpec
        with self.assertRaises(ValidationError):
            QuadratureSpec(abs_tol=0)
        with self.assertRaises(ValidationError):
            QuadratureSpec(max_nodes=0)

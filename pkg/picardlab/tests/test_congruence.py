from django.test import SimpleTestCase

from picardlab.congruence import rho, rho_count, trace_congruence_count
from picardlab.exceptions import UndefinedError
from picardlab.gint import GaussianInt, canonical_by_norm


class RhoTest(SimpleTestCase):
    def setUp(self):
        self.panel = [GaussianInt.parse(text) for text in
                      ('0', '1', 'i', '1+i', '2', '2i', '1-2i', '3', '2+3i', '-1+i', '4i', '3-3i')]

    def test_examples(self):
        self.assertEqual(rho_count(GaussianInt(1), GaussianInt(0)), 1)
        self.assertEqual(rho_count(GaussianInt(1), GaussianInt(1)), 1)
        self.assertEqual(rho_count(GaussianInt(1), GaussianInt(0, 1)), 0)

    def test_value_record(self):
        value = rho(GaussianInt(2), GaussianInt(-4))
        self.assertEqual(value.q, GaussianInt(2))
        self.assertEqual(value.n, GaussianInt(-4))
        self.assertLessEqual(value.count, (GaussianInt(2) * 2).norm())

    def test_zero_modulus(self):
        with self.assertRaises(UndefinedError):
            rho(GaussianInt(0), GaussianInt(1))
        with self.assertRaises(UndefinedError):
            trace_congruence_count(GaussianInt(1), GaussianInt(0))

    def test_shift_by_multiple_of_4q(self):
        for q in canonical_by_norm(13):
            for n in self.panel:
                shifted = n + q * 4 * GaussianInt(2, -1)
                self.assertEqual(rho_count(q, n), rho_count(q, shifted))

    def test_trace_congruence_bijection(self):
        for q in canonical_by_norm(60):
            for n in self.panel:
                self.assertEqual(trace_congruence_count(n, q), rho_count(q, n.conjugate() * n.conjugate() - 4),
                                 f"q={q} n={n}")
